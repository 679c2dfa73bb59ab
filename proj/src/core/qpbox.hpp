// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/matrix.hpp"

namespace bm::qp {

// minimize 1/2 x^T q x + linear^T x + constant  subject to  lower <= x <= upper.
// q must be symmetric positive definite; bounds may be +/-infinity.
struct box_qp {
    matrix q;
    std::vector<double> linear;
    std::vector<double> lower;
    std::vector<double> upper;
    double constant = 0.0;

    [[nodiscard]] int size() const noexcept { return static_cast<int>(linear.size()); }
};

struct solution {
    std::vector<double> x;
    double objective = 0.0;
    int iterations = 0;
    std::vector<int> active_lower; // indices exactly at their lower bound
    std::vector<int> active_upper;
    double kkt_residual = 0.0;
};

// Thrown when an iteration cap is hit; carries the best iterate reached.
class solver_stalled : public error {
public:
    solver_stalled(std::string message, solution best)
        : error(errc::solver_failure, std::move(message)), best_(std::move(best)) {}
    [[nodiscard]] const solution& best() const noexcept { return best_; }

private:
    solution best_;
};

// Structural validation shared by the solvers: square symmetric q (within a
// small relative tolerance), matching sizes, finite data, lower <= upper.
void validate(const box_qp& p);

// Objective value 1/2 x^T q x + linear^T x + constant.
[[nodiscard]] double objective_value(const box_qp& p, std::span<const double> x);

// Max KKT violation at x: |g_j| for free coordinates, max(0, -g_j) at the
// lower bound, max(0, g_j) at the upper bound (g = q x + linear), plus any
// bound infeasibility. Coordinates within `tol` of a bound count as bound;
// coordinates pinned by lower == upper are exempt from stationarity.
[[nodiscard]] double kkt_residual(const box_qp& p, std::span<const double> x, double tol = 1e-9);

// Primal active-set method. Starts from `start` clamped into the box (pass
// the lower-bound corner when in doubt); solves the free subspace by
// Cholesky, steps with a ratio test (ties to the lowest index), and releases
// the most negative multiplier. Pinned coordinates (lower == upper) are
// eliminated up front and reported active on both sides. Throws
// solver_stalled after 100 * size iterations.
[[nodiscard]] solution solve_active_set(const box_qp& p, std::span<const double> start,
                                        double tol = 1e-9);

// Projected gradient with fixed step 1 / L, L = max row sum of |q| (an upper
// bound on the largest eigenvalue). Slow but simple; used as a cross-check
// for the active-set method. Stops when the projected gradient norm drops
// below tol; throws solver_stalled at the iteration cap.
[[nodiscard]] solution solve_projected_gradient(const box_qp& p, double tol = 1e-9,
                                                long max_iterations = 2'000'000);

// Solves q x = -linear (the unconstrained minimizer) by Cholesky with one
// iterative refinement pass.
[[nodiscard]] std::vector<double> solve_unconstrained(const matrix& q,
                                                      std::span<const double> linear);

} // namespace bm::qp
