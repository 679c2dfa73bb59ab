// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace bm::quad {

// Gauss-Legendre rule on [-1, 1].
struct rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes by Newton iteration on the Legendre recurrence; results are cached,
// and the returned reference stays valid for the process lifetime.
[[nodiscard]] const rule& gauss_legendre(int points);

[[nodiscard]] double integrate(const rule& r, const std::function<double(double)>& f, double a,
                               double b);

// Adaptive bisection with a 15-point kernel: an interval is accepted when
// halving it changes the estimate by at most rel_tol (relative), and is
// always accepted at max_depth.
[[nodiscard]] double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                        double rel_tol = 1e-10, int max_depth = 30);

} // namespace bm::quad
