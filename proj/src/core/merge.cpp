// SPDX-License-Identifier: Apache-2.0
#include "core/merge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/bernstein.hpp"
#include "core/errors.hpp"
#include "core/subdivision.hpp"

namespace bm::merge {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int max_segment_degree(const composite_curve& p) {
    int n = 0;
    for (int i = 0; i < p.segment_count(); ++i) n = std::max(n, p.piece(i).degree());
    return n;
}

// j-th forward difference of one coordinate of a control point run that
// starts at row `anchor`.
double point_difference(const matrix& pts, int anchor, int j, int coordinate) {
    double s = 0.0;
    for (int h = 0; h <= j; ++h) {
        const double sign = ((j - h) % 2 == 0) ? 1.0 : -1.0;
        s += sign * bernstein::binomial(j, h) * pts(anchor + h, coordinate);
    }
    return s;
}

} // namespace

void validate(const composite_curve& p, const options& spec) {
    const int m = spec.degree;
    const int k = spec.left_order;
    const int l = spec.right_order;
    if (m < 1) fail(errc::constraint_violation, "target degree must be at least 1");
    if (m > bernstein::max_degree)
        fail(errc::constraint_violation, "target degree exceeds the supported cap " +
                                             std::to_string(bernstein::max_degree));
    if (m < max_segment_degree(p))
        fail(errc::constraint_violation,
             "target degree is below the largest segment degree " +
                 std::to_string(max_segment_degree(p)));
    if (k < 0 || l < 0) fail(errc::constraint_violation, "continuity orders must be non-negative");
    const int n_first = p.piece(0).degree();
    const int n_last = p.piece(p.segment_count() - 1).degree();
    if (k > n_first + 1)
        fail(errc::constraint_violation, "k exceeds the first segment's control point count");
    if (l > n_last + 1)
        fail(errc::constraint_violation, "l exceeds the last segment's control point count");
    if (k + l > m) fail(errc::constraint_violation, "k + l exceeds m");
    if (spec.samples < 1) fail(errc::constraint_violation, "sample count must be at least 1");
    if (spec.box) {
        const auto& b = *spec.box;
        const int d = p.dimension();
        if (static_cast<int>(b.lower.size()) != d || static_cast<int>(b.upper.size()) != d)
            fail(errc::constraint_violation, "box bounds must match the curve dimension");
        for (int h = 0; h < d; ++h) {
            const size_t u = static_cast<size_t>(h);
            if (!std::isfinite(b.lower[u]) || !std::isfinite(b.upper[u]))
                fail(errc::constraint_violation, "box bounds must be finite");
            if (!(b.lower[u] <= b.upper[u]))
                fail(errc::constraint_violation,
                     "box lower bound exceeds upper bound in coordinate " + std::to_string(h));
        }
    }
}

eliminated fixed_endpoint_points(const composite_curve& p, const options& spec) {
    validate(p, spec);
    const int m = spec.degree;
    const int k = spec.left_order;
    const int l = spec.right_order;
    const int d = p.dimension();
    const bool scaled = spec.frame == derivative_frame::global_curve;
    const auto& knots = p.partition();
    const double dt_first = knots[1] - knots[0];
    const double dt_last = knots[knots.size() - 1] - knots[knots.size() - 2];

    eliminated e;
    for (int j = 0; j < k; ++j) e.fixed_ids.push_back(j);
    for (int j = m - l + 1; j <= m; ++j) e.fixed_ids.push_back(j);
    for (int j = k; j <= m - l; ++j) e.free_ids.push_back(j);

    // Work array indexed by control point id; only the fixed ids are used.
    matrix r(m + 1, d);
    const matrix& first = p.piece(0).points();
    const matrix& last = p.piece(p.segment_count() - 1).points();
    const int n_first = p.piece(0).degree();
    const int n_last = p.piece(p.segment_count() - 1).degree();

    for (int j = 0; j < k; ++j) {
        const double lead = bernstein::binomial(n_first, j) / bernstein::binomial(m, j) *
                            (scaled ? std::pow(dt_first, -j) : 1.0);
        for (int h = 0; h < d; ++h) {
            double v = lead * point_difference(first, 0, j, h);
            for (int q = 0; q < j; ++q) {
                const double sign = ((j + q) % 2 == 0) ? 1.0 : -1.0;
                v -= sign * bernstein::binomial(j, q) * r(q, h);
            }
            r(j, h) = v;
        }
    }
    for (int j = 0; j < l; ++j) {
        const double lead = (j % 2 == 0 ? 1.0 : -1.0) * bernstein::binomial(n_last, j) /
                            bernstein::binomial(m, j) * (scaled ? std::pow(dt_last, -j) : 1.0);
        for (int h = 0; h < d; ++h) {
            double v = lead * point_difference(last, n_last - j, j, h);
            for (int q = 1; q <= j; ++q) {
                const double sign = (q % 2 == 0) ? 1.0 : -1.0;
                v -= sign * bernstein::binomial(j, q) * r(m - j + q, h);
            }
            r(m - j, h) = v;
        }
    }

    e.fixed_values = matrix(static_cast<int>(e.fixed_ids.size()), d);
    for (size_t row = 0; row < e.fixed_ids.size(); ++row)
        for (int h = 0; h < d; ++h)
            e.fixed_values(static_cast<int>(row), h) = r(e.fixed_ids[row], h);
    return e;
}

qp::box_qp assemble_objective(const composite_curve& p, const options& spec,
                              std::span<const matrix> restrictions, const eliminated& elim,
                              int coordinate) {
    validate(p, spec);
    const int m = spec.degree;
    const int d = p.dimension();
    if (coordinate < 0 || coordinate >= d)
        fail(errc::invalid_argument, "objective coordinate out of range");
    if (static_cast<int>(restrictions.size()) != p.segment_count())
        fail(errc::invalid_argument, "one restriction matrix per segment is required");

    const int nu = static_cast<int>(elim.free_ids.size());
    const int nc = static_cast<int>(elim.fixed_ids.size());
    std::vector<double> r_fixed(static_cast<size_t>(nc));
    for (int j = 0; j < nc; ++j) r_fixed[static_cast<size_t>(j)] = elim.fixed_values(j, coordinate);

    const matrix g_mm = bernstein::gramian(m, m);
    qp::box_qp out;
    out.q = matrix(nu, nu);
    out.linear.assign(static_cast<size_t>(nu), 0.0);

    const auto& knots = p.partition();
    for (int i = 0; i < p.segment_count(); ++i) {
        const double dt = knots[static_cast<size_t>(i) + 1] - knots[static_cast<size_t>(i)];
        const matrix& restriction = restrictions[static_cast<size_t>(i)];
        if (restriction.rows() != m + 1 || restriction.cols() != m + 1)
            fail(errc::invalid_argument, "restriction matrix has the wrong shape");
        const std::vector<int> rows = restriction.all_rows();
        const matrix d_free = restriction.submatrix(rows, elim.free_ids);
        const matrix d_fixed = restriction.submatrix(rows, elim.fixed_ids);

        const segment& piece = p.piece(i);
        const int n = piece.degree();
        std::vector<double> p_h(static_cast<size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) p_h[static_cast<size_t>(j)] = piece.points()(j, coordinate);

        const matrix g_mn = bernstein::gramian(m, n);
        const matrix g_nn = bernstein::gramian(n, n);

        // Q += 2 dt D_F^T G_mm D_F
        const matrix gd = multiply(g_mm, d_free);
        const matrix qi = multiply(d_free.transposed(), gd);
        for (int a = 0; a < nu; ++a)
            for (int b = 0; b < nu; ++b) out.q(a, b) += 2.0 * dt * qi(a, b);

        // d += 2 dt D_F^T (G_mm D_C r_C - G_mn p)
        const std::vector<double> w = multiply(d_fixed, r_fixed); // D_C r_C
        const std::vector<double> g1 = multiply(g_mm, w);
        const std::vector<double> g2 = multiply(g_mn, p_h);
        std::vector<double> rhs(static_cast<size_t>(m) + 1);
        for (int j = 0; j <= m; ++j)
            rhs[static_cast<size_t>(j)] = g1[static_cast<size_t>(j)] - g2[static_cast<size_t>(j)];
        const std::vector<double> dterm = multiply_transposed(d_free, rhs);
        for (int a = 0; a < nu; ++a) out.linear[static_cast<size_t>(a)] += 2.0 * dt * dterm[static_cast<size_t>(a)];

        // a += dt (p^T G_nn p - 2 p^T G_mn^T (D_C r_C) + (D_C r_C)^T G_mm (D_C r_C))
        out.constant += dt * (dot(p_h, multiply(g_nn, p_h)) - 2.0 * dot(g2, w) + dot(w, g1));
    }

    // The assembly is symmetric up to rounding; make it exact so downstream
    // validation never trips on last-ulp asymmetry.
    for (int a = 0; a < nu; ++a)
        for (int b = a + 1; b < nu; ++b) {
            const double v = 0.5 * (out.q(a, b) + out.q(b, a));
            out.q(a, b) = v;
            out.q(b, a) = v;
        }

    if (spec.box) {
        out.lower.assign(static_cast<size_t>(nu), spec.box->lower[static_cast<size_t>(coordinate)]);
        out.upper.assign(static_cast<size_t>(nu), spec.box->upper[static_cast<size_t>(coordinate)]);
    } else {
        out.lower.assign(static_cast<size_t>(nu), -kInf);
        out.upper.assign(static_cast<size_t>(nu), kInf);
    }
    return out;
}

namespace {

// sqrt of sum_i dt_i (D_i r - E p^i)^T G_mm (D_i r - E p^i), summed over
// coordinates: the squared L2 distance as a Gramian form on the difference
// polygons. Equal to the assembled objective at r, but free of the large-term
// cancellation that caps the expanded 1/2 x^T Q x + d^T x + a evaluation at
// ~1e-8 absolute accuracy near zero.
double exact_e2(const composite_curve& p, int m, std::span<const matrix> restrictions,
                const matrix& control) {
    const matrix g_mm = bernstein::gramian(m, m);
    const auto& knots = p.partition();
    double total = 0.0;
    for (int i = 0; i < p.segment_count(); ++i) {
        const double dt = knots[static_cast<size_t>(i) + 1] - knots[static_cast<size_t>(i)];
        const matrix local = multiply(restrictions[static_cast<size_t>(i)], control);
        const matrix lifted = elevate(p.piece(i), m).points();
        std::vector<double> diff(static_cast<size_t>(m) + 1);
        for (int h = 0; h < control.cols(); ++h) {
            for (int j = 0; j <= m; ++j)
                diff[static_cast<size_t>(j)] = local(j, h) - lifted(j, h);
            total += dt * dot(diff, multiply(g_mm, diff));
        }
    }
    return std::sqrt(std::max(total, 0.0));
}

result run_merge(const composite_curve& p, const options& spec) {
    validate(p, spec);
    const int m = spec.degree;
    const int d = p.dimension();
    const bool boxed = spec.box.has_value();

    const std::vector<matrix> restrictions = subdivision::interval_matrices(m, p.partition());
    const eliminated elim = fixed_endpoint_points(p, spec);

    result res;
    res.spec = spec;
    res.control_points = matrix(m + 1, d);
    res.iterations.assign(static_cast<size_t>(d), 0);
    res.active_lower.resize(static_cast<size_t>(d));
    res.active_upper.resize(static_cast<size_t>(d));

    for (size_t row = 0; row < elim.fixed_ids.size(); ++row)
        for (int h = 0; h < d; ++h)
            res.control_points(elim.fixed_ids[row], h) =
                elim.fixed_values(static_cast<int>(row), h);

    for (int h = 0; h < d; ++h) {
        const qp::box_qp problem = assemble_objective(p, spec, restrictions, elim, h);
        std::vector<double> x;
        if (boxed) {
            const qp::solution sol = qp::solve_active_set(problem, problem.lower);
            x = sol.x;
            res.iterations[static_cast<size_t>(h)] = sol.iterations;
            res.kkt_residual = std::max(res.kkt_residual, sol.kkt_residual);
            for (int idx : sol.active_lower)
                res.active_lower[static_cast<size_t>(h)].push_back(
                    elim.free_ids[static_cast<size_t>(idx)]);
            for (int idx : sol.active_upper)
                res.active_upper[static_cast<size_t>(h)].push_back(
                    elim.free_ids[static_cast<size_t>(idx)]);
        } else {
            x = qp::solve_unconstrained(problem.q, problem.linear);
        }
        for (size_t a = 0; a < elim.free_ids.size(); ++a)
            res.control_points(elim.free_ids[a], h) = x[a];
    }
    res.e2 = exact_e2(p, m, restrictions, res.control_points);
    res.e_inf = error_linf(p, res.control_points, spec.samples);

    if (boxed) {
        const auto& b = *spec.box;
        for (size_t row = 0; row < elim.fixed_ids.size(); ++row)
            for (int h = 0; h < d; ++h) {
                const double v = elim.fixed_values(static_cast<int>(row), h);
                if (v < b.lower[static_cast<size_t>(h)] || v > b.upper[static_cast<size_t>(h)])
                    res.warnings.push_back(
                        "fixed control point " + std::to_string(elim.fixed_ids[row]) +
                        " lies outside the box in coordinate " + std::to_string(h) +
                        " (endpoint constraints take precedence)");
            }
    }
    return res;
}

} // namespace

result merge_traditional(const composite_curve& p, const options& spec) {
    if (spec.box) fail(errc::invalid_argument, "traditional merge takes no box");
    return run_merge(p, spec);
}

result merge_boxed(const composite_curve& p, const options& spec) {
    if (!spec.box) fail(errc::invalid_argument, "boxed merge requires box bounds");
    return run_merge(p, spec);
}

result merge(const composite_curve& p, const options& spec) { return run_merge(p, spec); }

double error_linf(const composite_curve& p, const matrix& merged_points, int samples) {
    if (samples < 1) fail(errc::invalid_argument, "sample count must be at least 1");
    if (merged_points.cols() != p.dimension())
        fail(errc::invalid_argument, "merged control points must match the curve dimension");
    const segment merged(merged_points);
    double worst = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(samples);
        const std::vector<double> a = p.evaluate(t);
        const std::vector<double> b = evaluate(merged, t);
        double sq = 0.0;
        for (size_t h = 0; h < a.size(); ++h) sq += (a[h] - b[h]) * (a[h] - b[h]);
        worst = std::max(worst, std::sqrt(sq));
    }
    return worst;
}

box_bounds suggest_box(const composite_curve& p) {
    const int d = p.dimension();
    box_bounds b;
    b.lower.assign(static_cast<size_t>(d), kInf);
    b.upper.assign(static_cast<size_t>(d), -kInf);
    for (int i = 0; i < p.segment_count(); ++i) {
        const matrix& pts = p.piece(i).points();
        for (int r = 0; r < pts.rows(); ++r)
            for (int h = 0; h < d; ++h) {
                b.lower[static_cast<size_t>(h)] = std::min(b.lower[static_cast<size_t>(h)], pts(r, h));
                b.upper[static_cast<size_t>(h)] = std::max(b.upper[static_cast<size_t>(h)], pts(r, h));
            }
    }
    return b;
}

double box_diagonal(const box_bounds& b) {
    double sq = 0.0;
    for (size_t h = 0; h < b.lower.size(); ++h)
        sq += (b.upper[h] - b.lower[h]) * (b.upper[h] - b.lower[h]);
    return std::sqrt(sq);
}

box_bounds suggest_box(const composite_curve& p, double step, const box_bounds& previous,
                       std::span<const face> faces) {
    const int d = p.dimension();
    if (static_cast<int>(previous.lower.size()) != d ||
        static_cast<int>(previous.upper.size()) != d)
        fail(errc::invalid_argument, "previous box must match the curve dimension");
    if (!(step >= 0.0)) fail(errc::invalid_argument, "expansion step must be non-negative");
    std::vector<bool> seen(static_cast<size_t>(2 * d), false);
    for (const face& f : faces) {
        if (f.axis < 0 || f.axis >= d) fail(errc::invalid_argument, "face axis out of range");
        const size_t id = static_cast<size_t>(2 * f.axis + (f.upper_side ? 1 : 0));
        if (seen[id]) fail(errc::invalid_argument, "duplicate face in expansion list");
        seen[id] = true;
    }
    const double w = box_diagonal(previous);
    box_bounds next = previous;
    for (const face& f : faces) {
        const size_t h = static_cast<size_t>(f.axis);
        if (f.upper_side)
            next.upper[h] += step * w;
        else
            next.lower[h] -= step * w;
    }
    return next;
}

std::vector<face> default_expansion_faces(const composite_curve& p, const options& merge_options,
                                          const box_bounds& previous) {
    if (static_cast<int>(previous.lower.size()) != p.dimension() ||
        static_cast<int>(previous.upper.size()) != p.dimension())
        fail(errc::invalid_argument, "previous box must match the curve dimension");
    options spec = merge_options;
    spec.box.reset();
    const result traditional = merge_traditional(p, spec);
    const eliminated elim = fixed_endpoint_points(p, spec);

    const int d = p.dimension();
    std::vector<int> counts(static_cast<size_t>(2 * d), 0);
    for (int id : elim.free_ids)
        for (int h = 0; h < d; ++h) {
            const double v = traditional.control_points(id, h);
            if (v < previous.lower[static_cast<size_t>(h)]) ++counts[static_cast<size_t>(2 * h)];
            if (v > previous.upper[static_cast<size_t>(h)]) ++counts[static_cast<size_t>(2 * h + 1)];
        }
    const int best = *std::max_element(counts.begin(), counts.end());
    std::vector<face> faces;
    if (best == 0) return faces;
    for (int h = 0; h < d; ++h) {
        if (counts[static_cast<size_t>(2 * h)] == best) faces.push_back({h, false});
        if (counts[static_cast<size_t>(2 * h + 1)] == best) faces.push_back({h, true});
    }
    return faces;
}

box_bounds suggest_box(const composite_curve& p, double step, const box_bounds& previous,
                       const options& merge_options) {
    const std::vector<face> faces = default_expansion_faces(p, merge_options, previous);
    return suggest_box(p, step, previous, faces);
}

} // namespace bm::merge
