// SPDX-License-Identifier: Apache-2.0
#include "core/gauss_legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "core/errors.hpp"

namespace bm::quad {
namespace {

rule compute_rule(int n) {
    rule r;
    r.nodes.resize(static_cast<size_t>(n));
    r.weights.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre three-term recurrence for P_n(x) and P'_n(x).
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 =
                    ((2.0 * j - 1.0) * x * p1 - (static_cast<double>(j) - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        r.nodes[static_cast<size_t>(k)] = x;
        r.weights[static_cast<size_t>(k)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

} // namespace

const rule& gauss_legendre(int points) {
    if (points < 1) fail(errc::invalid_argument, "quadrature rule needs at least one point");
    static std::map<int, rule> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, compute_rule(points)).first;
    return it->second;
}

double integrate(const rule& r, const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return half * s;
}

namespace {

double adapt(const rule& r, const std::function<double(double)>& f, double a, double b,
             double whole, double rel_tol, int depth, int max_depth) {
    const double mid = 0.5 * (a + b);
    const double left = integrate(r, f, a, mid);
    const double right = integrate(r, f, mid, b);
    const double refined = left + right;
    if (depth >= max_depth || std::abs(refined - whole) <= rel_tol * std::abs(refined) + 1e-300)
        return refined;
    return adapt(r, f, a, mid, left, rel_tol, depth + 1, max_depth) +
           adapt(r, f, mid, b, right, rel_tol, depth + 1, max_depth);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_depth) {
    const rule& r = gauss_legendre(15);
    return adapt(r, f, a, b, integrate(r, f, a, b), rel_tol, 0, max_depth);
}

} // namespace bm::quad
