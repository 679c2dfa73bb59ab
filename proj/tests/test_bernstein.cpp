// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "core/bernstein.hpp"
#include "core/errors.hpp"
#include "core/gauss_legendre.hpp"
#include "core/matrix.hpp"

namespace bn = bm::bernstein;

TEST_SUITE_BEGIN("bernstein");

TEST_CASE("basis values at hand-checked points") {
    const std::vector<double> quadratic = bn::basis(2, 0.5);
    REQUIRE(quadratic.size() == 3);
    CHECK(quadratic[0] == doctest::Approx(0.25));
    CHECK(quadratic[1] == doctest::Approx(0.5));
    CHECK(quadratic[2] == doctest::Approx(0.25));

    const std::vector<double> quintic_at_zero = bn::basis(5, 0.0);
    CHECK(quintic_at_zero[0] == 1.0);
    for (int i = 1; i <= 5; ++i) CHECK(quintic_at_zero[static_cast<size_t>(i)] == 0.0);

    const std::vector<double> linear = bn::basis(1, 0.3);
    CHECK(linear[0] == doctest::Approx(0.7));
    CHECK(linear[1] == doctest::Approx(0.3));
}

TEST_CASE("basis is a nonnegative partition of unity") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int m = 0; m <= 30; ++m) {
        for (int trial = 0; trial < 100; ++trial) {
            const double t = dist(rng);
            const std::vector<double> b = bn::basis(m, t);
            double sum = 0;
            for (double v : b) {
                CHECK(v >= 0.0);
                sum += v;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("binomial coefficients") {
    CHECK(bn::binomial(0, 0) == 1.0);
    CHECK(bn::binomial(5, 2) == 10.0);
    CHECK(bn::binomial(10, 10) == 1.0);
    CHECK(bn::binomial(6, 9) == 0.0); // k > n
    CHECK(bn::binomial(bn::max_degree, 30) > 0.0);
    CHECK_THROWS_AS((void)bn::binomial(bn::max_degree + 1, 2), bm::error);
    CHECK_THROWS_AS((void)bn::binomial(-1, 0), bm::error);
    CHECK_THROWS_AS((void)bn::binomial(3, -1), bm::error);
}

TEST_CASE("forward differences") {
    const std::vector<double> q12 = {1.0, 3.0};
    CHECK(bn::forward_difference(q12, 1) == doctest::Approx(2.0));

    const std::vector<double> single = {5.0};
    CHECK(bn::forward_difference(single, 0) == doctest::Approx(5.0));

    const std::vector<double> q124 = {1.0, 2.0, 4.0};
    CHECK(bn::forward_difference(q124, 2) == doctest::Approx(1.0));

    CHECK_THROWS_AS((void)bn::forward_difference(q124, 3), bm::error);
}

TEST_CASE("anchored forward difference matches shifted view") {
    const std::vector<double> q = {2.0, -1.0, 4.0, 0.5, 3.0};
    // Difference of order j starting at index i equals the plain difference
    // of the suffix.
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; i + j < 5; ++j) {
            const std::vector<double> suffix(q.begin() + i, q.end());
            CHECK(bn::forward_difference(q, i, j) ==
                  doctest::Approx(bn::forward_difference(suffix, j)).epsilon(1e-14));
        }
    }
}

TEST_CASE("forward difference is linear") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 6;
        std::vector<double> q(n), w(n), mix(n);
        const double alpha = dist(rng);
        const double beta = dist(rng);
        for (int i = 0; i < n; ++i) {
            q[static_cast<size_t>(i)] = dist(rng);
            w[static_cast<size_t>(i)] = dist(rng);
            mix[static_cast<size_t>(i)] =
                alpha * q[static_cast<size_t>(i)] + beta * w[static_cast<size_t>(i)];
        }
        for (int j = 0; j < n; ++j) {
            const double lhs = bn::forward_difference(mix, j);
            const double rhs =
                alpha * bn::forward_difference(q, j) + beta * bn::forward_difference(w, j);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("gramian closed forms") {
    const bm::matrix g11 = bn::gramian(1, 1);
    CHECK(g11(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(g11(0, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(g11(1, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(g11(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const bm::matrix g00 = bn::gramian(0, 0);
    CHECK(g00.rows() == 1);
    CHECK(g00(0, 0) == doctest::Approx(1.0).epsilon(1e-15));

    const bm::matrix g20 = bn::gramian(2, 0);
    CHECK(g20.rows() == 3);
    CHECK(g20.cols() == 1);
    for (int i = 0; i < 3; ++i) CHECK(g20(i, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("gramian transpose identity") {
    for (const auto& [m, n] : {std::pair{3, 5}, std::pair{7, 4}, std::pair{12, 9}}) {
        const bm::matrix gmn = bn::gramian(m, n);
        const bm::matrix gnm = bn::gramian(n, m);
        REQUIRE(gmn.rows() == m + 1);
        REQUIRE(gmn.cols() == n + 1);
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= n; ++j)
                CHECK(std::abs(gmn(i, j) - gnm(j, i)) <= 1e-15);
    }
}

TEST_CASE("gramian entries match quadrature") {
    // Exact integration oracle: B_i^m B_j^n has degree <= 16, well inside a
    // 15-point rule's exactness (degree 29).
    const bm::quad::rule& rule = bm::quad::gauss_legendre(15);
    for (int m = 0; m <= 8; ++m) {
        for (int n = 0; n <= 8; ++n) {
            const bm::matrix g = bn::gramian(m, n);
            for (int i = 0; i <= m; ++i) {
                for (int j = 0; j <= n; ++j) {
                    const double numeric = bm::quad::integrate(
                        rule,
                        [&](double t) {
                            return bn::basis(m, t)[static_cast<size_t>(i)] *
                                   bn::basis(n, t)[static_cast<size_t>(j)];
                        },
                        0.0, 1.0);
                    CHECK(std::abs(g(i, j) - numeric) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("gramian is positive definite up to degree 20") {
    for (int m = 0; m <= 20; ++m) {
        const bm::matrix g = bn::gramian(m, m);
        const bm::matrix l = bm::cholesky(g); // throws if any pivot fails
        for (int i = 0; i <= m; ++i) CHECK(l(i, i) > 0.0);
    }
}

TEST_SUITE_END();
