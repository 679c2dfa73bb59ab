// SPDX-License-Identifier: Apache-2.0
// Acceptance gate for the merging library. Each criterion prints exactly one
// [PASS]/[FAIL]/[SKIP] line with the measured numbers; the process exit
// status is the number of failed criteria. Tolerances are pinned as named
// constants so a regression cannot silently loosen them.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "core/bezier.hpp"
#include "core/gauss_legendre.hpp"
#include "core/matrix.hpp"
#include "core/merge.hpp"
#include "core/qpbox.hpp"
#include "core/subdivision.hpp"
#include "support/fixtures.hpp"
#include "support/timing.hpp"

namespace mg = bm::merge;
using fixtures::to_matrix;

namespace {

// Reference error figures are quoted to three significant digits.
constexpr double kQuotedRelTol = 0.02;
// Arc-length knots are quoted to two decimals.
constexpr double kKnotTol = 0.005;
// Exact-arithmetic oracles: subdivision recurrence and quadrature E2.
constexpr double kOracleTol = 1e-9;
// Independent QP solvers must land on the same point.
constexpr double kSolverXTol = 1e-7;
constexpr double kKktTol = 1e-9;
// Endpoint derivative agreement, relative.
constexpr double kContinuityTol = 1e-6;
// Self-merge of a single segment must reproduce its control points.
constexpr double kFixedPointTol = 1e-10;

int g_failures = 0;
int g_passes = 0;
int g_skips = 0;
int g_index = 0;

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string usec(double seconds) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.0f", seconds * 1e6);
    return buf;
}

void report(char status, const std::string& detail) {
    ++g_index;
    const char* tag = status == 'P' ? "[PASS]" : status == 'S' ? "[SKIP]" : "[FAIL]";
    std::printf("%s criterion %2d: %s\n", tag, g_index, detail.c_str());
    std::fflush(stdout);
    if (status == 'F') ++g_failures;
    if (status == 'P') ++g_passes;
    if (status == 'S') ++g_skips;
}

void criterion(const std::function<std::pair<bool, std::string>()>& body) {
    try {
        const std::pair<bool, std::string> outcome = body();
        report(outcome.first ? 'P' : 'F', outcome.second);
    } catch (const std::exception& e) {
        report('F', std::string("unexpected error: ") + e.what());
    }
}

bool near_quoted(double measured, double quoted) {
    return std::abs(measured - quoted) <= kQuotedRelTol * std::abs(quoted);
}

mg::options opts(int m, int k, int l) {
    mg::options o;
    o.degree = m;
    o.left_order = k;
    o.right_order = l;
    return o;
}

// E2 oracle: adaptive quadrature of the squared distance, integrated interval
// by interval so knot kinks never straddle a panel.
double quadrature_e2(const bm::composite_curve& p, const bm::matrix& merged) {
    const bm::segment r(merged);
    double total = 0;
    const std::vector<double>& knots = p.partition();
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        total += bm::quad::integrate_adaptive(
            [&](double t) {
                const std::vector<double> a = p.evaluate(t);
                const std::vector<double> b = bm::evaluate(r, t);
                double dist2 = 0;
                for (size_t c = 0; c < a.size(); ++c) dist2 += (a[c] - b[c]) * (a[c] - b[c]);
                return dist2;
            },
            knots[i], knots[i + 1]);
    }
    return std::sqrt(std::max(total, 0.0));
}

std::vector<double> random_partition(std::mt19937& rng, int segments) {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    while (true) {
        std::vector<double> knots{0.0};
        for (int i = 0; i < segments - 1; ++i) knots.push_back(u(rng));
        knots.push_back(1.0);
        std::sort(knots.begin(), knots.end());
        double gap = 1.0;
        for (size_t i = 1; i < knots.size(); ++i) gap = std::min(gap, knots[i] - knots[i - 1]);
        if (gap >= 0.02) return knots;
    }
}

// C0 composite curve with random degrees and control points.
bm::composite_curve random_curve(std::mt19937& rng, int segments) {
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::uniform_int_distribution<int> degree_dist(2, 4);
    std::vector<bm::segment> segs;
    fixtures::point2 join = {coord(rng), coord(rng)};
    for (int i = 0; i < segments; ++i) {
        const int degree = degree_dist(rng);
        std::vector<fixtures::point2> pts(static_cast<size_t>(degree + 1));
        pts[0] = join;
        for (int j = 1; j <= degree; ++j) pts[static_cast<size_t>(j)] = {coord(rng), coord(rng)};
        join = pts.back();
        segs.emplace_back(to_matrix(pts));
    }
    return {std::move(segs), random_partition(rng, segments)};
}

// Random box QP with lambda_min >= 1, so both solvers converge crisply.
bm::qp::box_qp random_qp(std::mt19937& rng, int size) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> width(0.1, 2.0);
    bm::matrix a(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) a(i, j) = u(rng);
    bm::matrix q = bm::multiply(a.transposed(), a);
    for (int i = 0; i < size; ++i) q(i, i) += 1.0;
    bm::qp::box_qp p;
    p.q = std::move(q);
    p.linear.resize(static_cast<size_t>(size));
    p.lower.resize(static_cast<size_t>(size));
    p.upper.resize(static_cast<size_t>(size));
    for (int j = 0; j < size; ++j) {
        const size_t s = static_cast<size_t>(j);
        p.linear[s] = 3.0 * u(rng);
        p.lower[s] = u(rng) - 0.5;
        p.upper[s] = p.lower[s] + width(rng);
    }
    return p;
}

// Worst relative endpoint-derivative mismatch between the merged curve and
// the end segments, over the orders the merge promised to match.
double continuity_mismatch(const bm::composite_curve& p, const mg::options& o,
                           const mg::result& res) {
    const bm::segment merged(res.control_points);
    const std::vector<double>& knots = p.partition();
    const double dt0 = knots[1] - knots[0];
    const double dts = knots[knots.size() - 1] - knots[knots.size() - 2];
    double worst = 0.0;
    const auto compare = [&](int order, double at, const bm::segment& end, double dt) {
        const std::vector<double> got = bm::derivative_at(merged, order, at);
        std::vector<double> want = bm::derivative_at(end, order, at);
        if (o.frame == mg::derivative_frame::global_curve)
            for (double& w : want) w /= std::pow(dt, order);
        for (size_t c = 0; c < want.size(); ++c) {
            const double scale = std::max({1.0, std::abs(want[c]), std::abs(got[c])});
            worst = std::max(worst, std::abs(got[c] - want[c]) / scale);
        }
    };
    for (int j = 0; j < o.left_order; ++j) compare(j, 0.0, p.piece(0), dt0);
    for (int j = 0; j < o.right_order; ++j)
        compare(j, 1.0, p.piece(p.segment_count() - 1), dts);
    return worst;
}

// The four nested boxes of the reference table, tightest first.
std::vector<mg::box_bounds> nested_boxes() {
    const mg::box_bounds dbox1{{0.0, 0.0}, {0.8, 1.0}};
    const double low2 = -0.04 * mg::box_diagonal(dbox1);
    const mg::box_bounds dbox2{{low2, low2}, {0.8, 1.0}};
    const double low3 = low2 - 0.08 * mg::box_diagonal(dbox2);
    const mg::box_bounds dbox3{{low3, low3}, {0.8, 1.0}};
    const mg::box_bounds res1{{-0.2, -0.3}, {0.8, 1.0}};
    return {dbox1, dbox2, dbox3, res1};
}

} // namespace

int main() {
    const bm::composite_curve amp = fixtures::ampersand();
    const bm::composite_curve d = fixtures::dcurve();
    const mg::box_bounds amp_box{{-0.17, 0.0}, {0.73, 1.15}};

    // 1. Ampersand traditional merge error figures.
    criterion([&]() -> std::pair<bool, std::string> {
        const mg::result r = mg::merge_traditional(amp, opts(14, 3, 1));
        const bool ok = near_quoted(r.e2, 5.49e-3) && near_quoted(r.e_inf, 2.28e-2);
        return {ok, "ampersand traditional merge (m=14, k=3, l=1): E2 " + sci(r.e2) +
                        " vs 5.49e-03, Einf " + sci(r.e_inf) + " vs 2.28e-02"};
    });

    // 2. Ampersand boxed merge error figures; free points inside the box.
    criterion([&]() -> std::pair<bool, std::string> {
        mg::options o = opts(14, 3, 1);
        o.box = amp_box;
        const mg::result r = mg::merge_boxed(amp, o);
        bool inside = true;
        for (int j = 3; j <= 13; ++j)
            for (int h = 0; h < 2; ++h)
                inside = inside && r.control_points(j, h) >= amp_box.lower[static_cast<size_t>(h)] &&
                         r.control_points(j, h) <= amp_box.upper[static_cast<size_t>(h)];
        const bool ok = near_quoted(r.e2, 1.85e-2) && near_quoted(r.e_inf, 6.10e-2) && inside;
        return {ok, "ampersand boxed merge (box (-0.17,0)-(0.73,1.15)): E2 " + sci(r.e2) +
                        " vs 1.85e-02, Einf " + sci(r.e_inf) + " vs 6.10e-02, free points " +
                        (inside ? "inside" : "OUTSIDE") + " the box"};
    });

    // 3. Arc-length partition of the D curve.
    criterion([&]() -> std::pair<bool, std::string> {
        const std::vector<double> knots = bm::arc_length_partition(fixtures::dcurve_segments());
        const bool ok = std::abs(knots[1] - 0.32) <= kKnotTol && std::abs(knots[2] - 0.57) <= kKnotTol;
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "D-curve arc-length partition: t1 %.4f vs 0.32, t2 %.4f vs 0.57 (+/-%.3f)",
                      knots[1], knots[2], kKnotTol);
        return {ok, buf};
    });

    // 4. D-curve traditional merge error figures.
    criterion([&]() -> std::pair<bool, std::string> {
        const mg::result r = mg::merge_traditional(d, opts(18, 1, 2));
        const bool ok = near_quoted(r.e2, 3.35e-3) && near_quoted(r.e_inf, 9.57e-3);
        return {ok, "D-curve traditional merge (m=18, k=1, l=2): E2 " + sci(r.e2) +
                        " vs 3.35e-03, Einf " + sci(r.e_inf) + " vs 9.57e-03"};
    });

    // 5. Nested-box table on the D curve; iteration counts reported, not matched.
    criterion([&]() -> std::pair<bool, std::string> {
        const std::vector<mg::box_bounds> boxes = nested_boxes();
        const std::vector<const char*> names = {"DBox1", "DBox2", "DBox3", "Res1"};
        const std::vector<double> want_e2 = {2.25e-2, 1.86e-2, 1.51e-2, 1.38e-2};
        const std::vector<double> want_einf = {5.54e-2, 4.14e-2, 3.30e-2, 2.98e-2};
        bool ok = true;
        std::string detail = "D-curve boxed merges:";
        for (size_t i = 0; i < boxes.size(); ++i) {
            mg::options o = opts(18, 1, 2);
            o.box = boxes[i];
            const mg::result r = mg::merge_boxed(d, o);
            ok = ok && near_quoted(r.e2, want_e2[i]) && near_quoted(r.e_inf, want_einf[i]);
            detail += std::string(" ") + names[i] + " E2 " + sci(r.e2) + " vs " + sci(want_e2[i]) +
                      ", Einf " + sci(r.e_inf) + " vs " + sci(want_einf[i]) + " (iters " +
                      std::to_string(r.iterations[0]) + "/" + std::to_string(r.iterations[1]) +
                      ");";
        }
        return {ok, detail};
    });

    // 6. Third benchmark curve: no fixture to run.
    report('S', "third benchmark curve (quoted E2 2.08e-03 traditional / 9.71e-03 boxed): "
                "control points come from an external source and cannot be redistributed, "
                "so there is nothing to measure against (see data/README.md)");

    // 7. Relative timing: boxes cost extra; the recurrence wins at high degree.
    criterion([&]() -> std::pair<bool, std::string> {
        const auto time_merge = [](const bm::composite_curve& p, const mg::options& o) {
            return timing::seconds_per_call([&] { (void)mg::merge(p, o); }, 5, 0.02);
        };
        mg::options amp_plain = opts(14, 3, 1);
        amp_plain.samples = 50; // keep the shared sampling cost from drowning the solve
        mg::options amp_boxed = amp_plain;
        amp_boxed.box = amp_box;
        mg::options d_plain = opts(18, 1, 2);
        d_plain.samples = 50;
        mg::options d_boxed = d_plain;
        d_boxed.box = mg::box_bounds{{-0.2, -0.3}, {0.8, 1.0}};

        const double amp_t = time_merge(amp, amp_plain);
        const double amp_b = time_merge(amp, amp_boxed);
        const double d_t = time_merge(d, d_plain);
        const double d_b = time_merge(d, d_boxed);

        const std::vector<double> part = {0.0, 0.3, 0.55, 0.8, 1.0};
        std::string sub_detail;
        bool recurrence_wins = true;
        for (const int m : {32, 64}) {
            const double direct = timing::seconds_per_call(
                [&] { (void)bm::subdivision::interval_matrices_direct(m, part); }, 5, 0.02);
            const double recurrence = timing::seconds_per_call(
                [&] { (void)bm::subdivision::interval_matrices_recurrence(m, part); }, 5, 0.02);
            recurrence_wins = recurrence_wins && recurrence < direct;
            sub_detail += " m=" + std::to_string(m) + " direct/recurrence " + usec(direct) + "/" +
                          usec(recurrence) + "us;";
        }
        const bool ok = amp_b > amp_t && d_b > d_t && recurrence_wins;
        return {ok, "boxed/traditional wall time: ampersand " + usec(amp_b) + "/" + usec(amp_t) +
                        "us, D " + usec(d_b) + "/" + usec(d_t) + "us; subdivision" + sub_detail};
    });

    // 8. Subdivision oracle equivalence on random instances.
    criterion([&]() -> std::pair<bool, std::string> {
        std::mt19937 rng(4242);
        std::uniform_int_distribution<int> m_dist(2, 20);
        std::uniform_int_distribution<int> s_dist(1, 6);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const int m = m_dist(rng);
            const std::vector<double> part = random_partition(rng, s_dist(rng));
            const std::vector<bm::matrix> a = bm::subdivision::interval_matrices_direct(m, part);
            const std::vector<bm::matrix> b =
                bm::subdivision::interval_matrices_recurrence(m, part);
            for (size_t i = 0; i < a.size(); ++i)
                for (int r = 0; r <= m; ++r)
                    for (int c = 0; c <= m; ++c)
                        worst = std::max(worst, std::abs(a[i](r, c) - b[i](r, c)));
        }
        return {worst <= kOracleTol,
                "restriction matrices, recurrence vs direct product: worst entry gap " +
                    sci(worst) + " over 20 random instances (m <= 20, s <= 6), tolerance " +
                    sci(kOracleTol)};
    });

    // 9. QP solver cross-validation.
    criterion([&]() -> std::pair<bool, std::string> {
        std::mt19937 rng(2024);
        std::uniform_int_distribution<int> size_dist(1, 30);
        double worst_x = 0.0;
        double worst_kkt = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const bm::qp::box_qp p = random_qp(rng, size_dist(rng));
            const bm::qp::solution as = bm::qp::solve_active_set(p, p.lower);
            const bm::qp::solution pg = bm::qp::solve_projected_gradient(p);
            for (size_t j = 0; j < as.x.size(); ++j)
                worst_x = std::max(worst_x, std::abs(as.x[j] - pg.x[j]));
            worst_kkt = std::max({worst_kkt, as.kkt_residual, pg.kkt_residual});
        }
        const bool ok = worst_x <= kSolverXTol && worst_kkt <= kKktTol;
        return {ok, "active-set vs projected-gradient on 50 random SPD boxes (nu <= 30): "
                    "worst solution gap " +
                        sci(worst_x) + " (tol " + sci(kSolverXTol) + "), worst KKT residual " +
                        sci(worst_kkt) + " (tol " + sci(kKktTol) + ")"};
    });

    // 10. Reported E2 vs the quadrature oracle.
    criterion([&]() -> std::pair<bool, std::string> {
        double worst = 0.0;
        const auto gap = [&](const bm::composite_curve& p, const mg::options& o) {
            const mg::result r = mg::merge(p, o);
            worst = std::max(worst, std::abs(r.e2 - quadrature_e2(p, r.control_points)));
        };
        gap(amp, opts(14, 3, 1));
        mg::options boxed = opts(14, 3, 1);
        boxed.box = amp_box;
        gap(amp, boxed);
        gap(d, opts(18, 1, 2));
        mg::options res1 = opts(18, 1, 2);
        res1.box = mg::box_bounds{{-0.2, -0.3}, {0.8, 1.0}};
        gap(d, res1);

        std::mt19937 rng(99);
        std::uniform_int_distribution<int> seg_dist(2, 4);
        std::uniform_int_distribution<int> extra(0, 3);
        for (int trial = 0; trial < 20; ++trial) {
            const bm::composite_curve p = random_curve(rng, seg_dist(rng));
            int max_degree = 0;
            for (int i = 0; i < p.segment_count(); ++i)
                max_degree = std::max(max_degree, p.piece(i).degree());
            mg::options o = opts(max_degree + extra(rng), 1, 1);
            if (trial % 3 == 0) o.box = mg::box_bounds{{0.1, 0.1}, {0.9, 0.9}};
            gap(p, o);
        }
        return {worst <= kOracleTol, "exact E2 vs adaptive quadrature: worst gap " + sci(worst) +
                                         " over 4 fixture merges + 20 random merges, tolerance " +
                                         sci(kOracleTol)};
    });

    // 11. Endpoint continuity at the promised orders.
    criterion([&]() -> std::pair<bool, std::string> {
        double worst = 0.0;
        const auto run = [&](const bm::composite_curve& p, mg::options o) {
            worst = std::max(worst, continuity_mismatch(p, o, mg::merge(p, o)));
        };
        for (const auto frame :
             {mg::derivative_frame::segment_local, mg::derivative_frame::global_curve}) {
            mg::options a = opts(14, 3, 1);
            a.frame = frame;
            run(amp, a);
            mg::options b = opts(18, 1, 2);
            b.frame = frame;
            run(d, b);
        }
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> seg_dist(2, 3);
        for (int trial = 0; trial < 10; ++trial) {
            const bm::composite_curve p = random_curve(rng, seg_dist(rng));
            int max_degree = 0;
            for (int i = 0; i < p.segment_count(); ++i)
                max_degree = std::max(max_degree, p.piece(i).degree());
            const int m = max_degree + 3;
            const int n1 = p.piece(0).degree();
            const int ns = p.piece(p.segment_count() - 1).degree();
            std::uniform_int_distribution<int> k_dist(0, std::min(3, n1 + 1));
            std::uniform_int_distribution<int> l_dist(0, std::min(3, ns + 1));
            int k = k_dist(rng);
            int l = l_dist(rng);
            if (k + l > m) l = m - k;
            run(p, opts(m, k, l));
        }
        return {worst <= kContinuityTol,
                "endpoint derivatives up to orders k-1/l-1: worst relative mismatch " + sci(worst) +
                    " over fixtures (both frames) + 10 random (k,l), tolerance " +
                    sci(kContinuityTol)};
    });

    // 12. Monotonicity along the nested boxes; traditional never loses.
    criterion([&]() -> std::pair<bool, std::string> {
        const double traditional = mg::merge_traditional(d, opts(18, 1, 2)).e2;
        bool ok = true;
        double previous = std::numeric_limits<double>::infinity();
        std::string chain;
        for (const mg::box_bounds& box : nested_boxes()) {
            mg::options o = opts(18, 1, 2);
            o.box = box;
            const double e2 = mg::merge_boxed(d, o).e2;
            ok = ok && e2 <= previous + 1e-12 && traditional <= e2 + 1e-12;
            chain += (chain.empty() ? "" : " >= ") + sci(e2);
            previous = e2;
        }
        mg::options amp_boxed = opts(14, 3, 1);
        amp_boxed.box = amp_box;
        const double amp_trad = mg::merge_traditional(amp, opts(14, 3, 1)).e2;
        ok = ok && amp_trad <= mg::merge_boxed(amp, amp_boxed).e2 + 1e-12;
        return {ok, "E2 non-increasing along nested boxes: " + chain +
                        ", all >= traditional " + sci(traditional) +
                        "; ampersand traditional <= boxed as well"};
    });

    // 13. Single-segment self-merge is the identity.
    criterion([&]() -> std::pair<bool, std::string> {
        const bm::matrix original = to_matrix(fixtures::ampersand_points()[0]);
        std::vector<bm::segment> segs;
        segs.emplace_back(original);
        const bm::composite_curve p(std::move(segs), {0.0, 1.0});
        const mg::result r = mg::merge_traditional(p, opts(5, 0, 0));
        double worst = 0.0;
        for (int row = 0; row < original.rows(); ++row)
            for (int c = 0; c < original.cols(); ++c)
                worst = std::max(worst, std::abs(r.control_points(row, c) - original(row, c)));
        const bool ok = worst <= kFixedPointTol && r.e2 <= kFixedPointTol;
        return {ok, "single-segment self-merge (m=5, k=l=0): max control point drift " +
                        sci(worst) + ", E2 " + sci(r.e2) + ", tolerance " + sci(kFixedPointTol)};
    });

    std::fprintf(stderr, "acceptance: %d passed, %d failed, %d skipped\n", g_passes, g_failures,
                 g_skips);
    return g_failures;
}
