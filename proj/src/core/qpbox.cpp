// SPDX-License-Identifier: Apache-2.0
#include "core/qpbox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bm::qp {
namespace {

enum class side : unsigned char { free_var, lower, upper };

void collect_active(const box_qp& p, std::span<const double> x, double tol, solution& s) {
    s.active_lower.clear();
    s.active_upper.clear();
    for (int j = 0; j < p.size(); ++j) {
        const size_t u = static_cast<size_t>(j);
        if (x[u] - p.lower[u] <= tol) s.active_lower.push_back(j);
        if (p.upper[u] - x[u] <= tol) s.active_upper.push_back(j);
    }
}

solution finish(const box_qp& p, std::vector<double> x, int iterations, double tol) {
    solution s;
    s.x = std::move(x);
    s.objective = objective_value(p, s.x);
    s.iterations = iterations;
    s.kkt_residual = kkt_residual(p, s.x, tol);
    collect_active(p, s.x, tol, s);
    return s;
}

} // namespace

void validate(const box_qp& p) {
    const int n = p.size();
    if (p.q.rows() != n || p.q.cols() != n)
        fail(errc::invalid_argument, "quadratic term must be n x n for n variables");
    if (static_cast<int>(p.lower.size()) != n || static_cast<int>(p.upper.size()) != n)
        fail(errc::invalid_argument, "bound vectors must match the variable count");
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!std::isfinite(p.q(i, j)))
                fail(errc::invalid_argument, "quadratic term must be finite");
            scale = std::max(scale, std::abs(p.q(i, j)));
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(p.q(i, j) - p.q(j, i)) > 1e-10 * (1.0 + scale))
                fail(errc::invalid_argument, "quadratic term must be symmetric");
    for (int j = 0; j < n; ++j) {
        const size_t u = static_cast<size_t>(j);
        if (!std::isfinite(p.linear[u]))
            fail(errc::invalid_argument, "linear term must be finite");
        if (std::isnan(p.lower[u]) || std::isnan(p.upper[u]))
            fail(errc::invalid_argument, "bounds must not be NaN");
        if (!(p.lower[u] <= p.upper[u]))
            fail(errc::invalid_argument,
                 "lower bound exceeds upper bound at variable " + std::to_string(j));
    }
    if (!std::isfinite(p.constant)) fail(errc::invalid_argument, "constant term must be finite");
}

double objective_value(const box_qp& p, std::span<const double> x) {
    const std::vector<double> qx = multiply(p.q, x);
    return 0.5 * dot(qx, x) + dot(p.linear, x) + p.constant;
}

double kkt_residual(const box_qp& p, std::span<const double> x, double tol) {
    const int n = p.size();
    if (static_cast<int>(x.size()) != n)
        fail(errc::invalid_argument, "kkt point size mismatch");
    std::vector<double> g = multiply(p.q, x);
    for (int j = 0; j < n; ++j) g[static_cast<size_t>(j)] += p.linear[static_cast<size_t>(j)];

    double stationarity = 0.0;
    double infeasibility = 0.0;
    for (int j = 0; j < n; ++j) {
        const size_t u = static_cast<size_t>(j);
        infeasibility = std::max({infeasibility, p.lower[u] - x[u], x[u] - p.upper[u]});
        const bool at_lower = x[u] - p.lower[u] <= tol;
        const bool at_upper = p.upper[u] - x[u] <= tol;
        if (at_lower && at_upper) continue; // pinned: no stationarity requirement
        double v;
        if (at_lower)
            v = std::max(0.0, -g[u]);
        else if (at_upper)
            v = std::max(0.0, g[u]);
        else
            v = std::abs(g[u]);
        stationarity = std::max(stationarity, v);
    }
    return stationarity + std::max(0.0, infeasibility);
}

solution solve_active_set(const box_qp& p, std::span<const double> start, double tol) {
    validate(p);
    const int n = p.size();
    if (static_cast<int>(start.size()) != n)
        fail(errc::invalid_argument, "start point size mismatch");

    // Pinned coordinates are fixed and eliminated from the iteration.
    std::vector<bool> pinned(static_cast<size_t>(n), false);
    std::vector<double> x(start.begin(), start.end());
    for (int j = 0; j < n; ++j) {
        const size_t u = static_cast<size_t>(j);
        x[u] = std::clamp(x[u], p.lower[u], p.upper[u]);
        pinned[u] = p.lower[u] == p.upper[u];
    }

    std::vector<int> vars; // iteration works on these indices only
    for (int j = 0; j < n; ++j)
        if (!pinned[static_cast<size_t>(j)]) vars.push_back(j);

    std::vector<side> state(static_cast<size_t>(n), side::free_var);
    for (int j : vars) {
        const size_t u = static_cast<size_t>(j);
        if (x[u] <= p.lower[u])
            state[u] = side::lower;
        else if (x[u] >= p.upper[u])
            state[u] = side::upper;
    }

    const long cap = 100L * std::max(1, n);
    long iterations = 0;
    while (true) {
        ++iterations;
        if (iterations > cap) {
            solution best = finish(p, x, static_cast<int>(iterations - 1), tol);
            throw solver_stalled("active-set iteration cap " + std::to_string(cap) +
                                     " exceeded (kkt residual " +
                                     std::to_string(best.kkt_residual) + ")",
                                 std::move(best));
        }

        std::vector<int> free_ids;
        for (int j : vars)
            if (state[static_cast<size_t>(j)] == side::free_var) free_ids.push_back(j);

        // Minimize over the free subspace with the bound variables held.
        std::vector<double> target = x;
        if (!free_ids.empty()) {
            const int nf = static_cast<int>(free_ids.size());
            matrix qff(nf, nf);
            std::vector<double> rhs(static_cast<size_t>(nf), 0.0);
            for (int a = 0; a < nf; ++a) {
                const int ja = free_ids[static_cast<size_t>(a)];
                for (int b = 0; b < nf; ++b)
                    qff(a, b) = p.q(ja, free_ids[static_cast<size_t>(b)]);
                double r = -p.linear[static_cast<size_t>(ja)];
                for (int j = 0; j < n; ++j)
                    if (state[static_cast<size_t>(j)] != side::free_var || pinned[static_cast<size_t>(j)])
                        r -= p.q(ja, j) * x[static_cast<size_t>(j)];
                rhs[static_cast<size_t>(a)] = r;
            }
            const matrix l = cholesky(qff);
            std::vector<double> z = cholesky_solve(l, rhs);
            // Refine once, as in solve_unconstrained: Gramian-backed blocks
            // are ill-conditioned enough for the raw solve to drift ~1e-8.
            const std::vector<double> qz = multiply(qff, z);
            std::vector<double> residual(static_cast<size_t>(nf));
            for (int a = 0; a < nf; ++a)
                residual[static_cast<size_t>(a)] =
                    rhs[static_cast<size_t>(a)] - qz[static_cast<size_t>(a)];
            const std::vector<double> dz = cholesky_solve(l, residual);
            for (int a = 0; a < nf; ++a) z[static_cast<size_t>(a)] += dz[static_cast<size_t>(a)];
            for (int a = 0; a < nf; ++a)
                target[static_cast<size_t>(free_ids[static_cast<size_t>(a)])] =
                    z[static_cast<size_t>(a)];
        }

        // Ratio test along x -> target; the first (lowest-index) strict
        // blocker wins, which rules out cycling on ties.
        double alpha = 1.0;
        int blocker = -1;
        side blocker_side = side::free_var;
        for (int j : free_ids) {
            const size_t u = static_cast<size_t>(j);
            if (target[u] < p.lower[u]) {
                const double a = (p.lower[u] - x[u]) / (target[u] - x[u]);
                if (a < alpha - 1e-15) {
                    alpha = a;
                    blocker = j;
                    blocker_side = side::lower;
                }
            } else if (target[u] > p.upper[u]) {
                const double a = (p.upper[u] - x[u]) / (target[u] - x[u]);
                if (a < alpha - 1e-15) {
                    alpha = a;
                    blocker = j;
                    blocker_side = side::upper;
                }
            }
        }
        if (blocker >= 0) {
            for (int j : free_ids) {
                const size_t u = static_cast<size_t>(j);
                x[u] += alpha * (target[u] - x[u]);
            }
            const size_t u = static_cast<size_t>(blocker);
            x[u] = blocker_side == side::lower ? p.lower[u] : p.upper[u];
            state[u] = blocker_side;
            continue;
        }
        x = target;

        // Optimality: every bound multiplier must be non-negative. Release
        // the most negative one, if any.
        std::vector<double> g = multiply(p.q, x);
        for (int j = 0; j < n; ++j) g[static_cast<size_t>(j)] += p.linear[static_cast<size_t>(j)];
        int release = -1;
        double worst = -tol;
        for (int j : vars) {
            const size_t u = static_cast<size_t>(j);
            if (state[u] == side::free_var) continue;
            const double mu = state[u] == side::lower ? g[u] : -g[u];
            if (mu < worst) {
                worst = mu;
                release = j;
            }
        }
        if (release < 0) {
            for (int j = 0; j < n; ++j) { // guard against sub-ulp bound overshoot
                const size_t u = static_cast<size_t>(j);
                x[u] = std::clamp(x[u], p.lower[u], p.upper[u]);
            }
            return finish(p, std::move(x), static_cast<int>(iterations), tol);
        }
        state[static_cast<size_t>(release)] = side::free_var;
    }
}

solution solve_projected_gradient(const box_qp& p, double tol, long max_iterations) {
    validate(p);
    const int n = p.size();

    double lipschitz = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::abs(p.q(i, j));
        lipschitz = std::max(lipschitz, row);
    }
    if (lipschitz == 0.0) lipschitz = 1.0;
    const double step = 1.0 / lipschitz;

    auto project = [&](std::vector<double>& v) {
        for (int j = 0; j < n; ++j) {
            const size_t u = static_cast<size_t>(j);
            v[u] = std::clamp(v[u], p.lower[u], p.upper[u]);
        }
    };

    std::vector<double> x(static_cast<size_t>(n), 0.0);
    project(x);
    long it = 0;
    while (true) {
        std::vector<double> g = multiply(p.q, x);
        for (int j = 0; j < n; ++j) g[static_cast<size_t>(j)] += p.linear[static_cast<size_t>(j)];

        // Projected-gradient residual at unit step.
        double residual = 0.0;
        for (int j = 0; j < n; ++j) {
            const size_t u = static_cast<size_t>(j);
            const double moved = std::clamp(x[u] - g[u], p.lower[u], p.upper[u]);
            residual = std::max(residual, std::abs(x[u] - moved));
        }
        if (residual <= tol)
            return finish(p, std::move(x), static_cast<int>(std::min<long>(it, INT32_MAX)), tol);
        if (++it > max_iterations) {
            solution best = finish(p, x, static_cast<int>(std::min<long>(it, INT32_MAX)), tol);
            throw solver_stalled("projected-gradient iteration cap exceeded (residual " +
                                     std::to_string(residual) + ")",
                                 std::move(best));
        }
        for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] -= step * g[static_cast<size_t>(j)];
        project(x);
    }
}

std::vector<double> solve_unconstrained(const matrix& q, std::span<const double> linear) {
    if (q.rows() != q.cols() || q.rows() != static_cast<int>(linear.size()))
        fail(errc::invalid_argument, "unconstrained solve dimension mismatch");
    const matrix l = cholesky(q);
    std::vector<double> rhs(linear.size());
    for (size_t j = 0; j < linear.size(); ++j) rhs[j] = -linear[j];
    std::vector<double> x = cholesky_solve(l, rhs);

    // One iterative refinement pass tightens the residual by several digits
    // when q is poorly conditioned (high-degree problems).
    std::vector<double> qx = multiply(q, x);
    std::vector<double> r(linear.size());
    for (size_t j = 0; j < r.size(); ++j) r[j] = rhs[j] - qx[j];
    const std::vector<double> dx = cholesky_solve(l, r);
    for (size_t j = 0; j < x.size(); ++j) x[j] += dx[j];
    return x;
}

} // namespace bm::qp
