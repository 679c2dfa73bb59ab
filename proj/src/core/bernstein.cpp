// SPDX-License-Identifier: Apache-2.0
#include "core/bernstein.hpp"

#include <array>
#include <string>

#include "core/errors.hpp"

namespace bm::bernstein {
namespace {

struct pascal_table {
    // Row n holds C(n, 0..n); rows 0..max_degree.
    std::array<std::array<double, max_degree + 1>, max_degree + 1> c{};

    pascal_table() {
        for (int n = 0; n <= max_degree; ++n) {
            c[static_cast<size_t>(n)][0] = 1.0;
            for (int k = 1; k <= n; ++k)
                c[static_cast<size_t>(n)][static_cast<size_t>(k)] =
                    c[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)] +
                    (k <= n - 1 ? c[static_cast<size_t>(n - 1)][static_cast<size_t>(k)] : 0.0);
        }
    }
};

const pascal_table& table() {
    static const pascal_table t;
    return t;
}

} // namespace

double binomial(int n, int k) {
    if (n < 0 || k < 0)
        fail(errc::invalid_argument, "binomial arguments must be non-negative");
    if (n > max_degree)
        fail(errc::numeric_failure,
             "binomial row " + std::to_string(n) + " exceeds the supported maximum degree " +
                 std::to_string(max_degree));
    if (k > n) return 0.0;
    return table().c[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

std::vector<double> basis(int m, double t) {
    if (m < 0) fail(errc::invalid_argument, "basis degree must be non-negative");
    std::vector<double> b(static_cast<size_t>(m) + 1, 0.0);
    b[0] = 1.0;
    const double s = 1.0 - t;
    for (int j = 1; j <= m; ++j) {
        double carry = 0.0;
        for (int i = 0; i < j; ++i) {
            const double tmp = b[static_cast<size_t>(i)];
            b[static_cast<size_t>(i)] = s * tmp + carry;
            carry = t * tmp;
        }
        b[static_cast<size_t>(j)] = carry;
    }
    return b;
}

double forward_difference(std::span<const double> q, int j) { return forward_difference(q, 0, j); }

double forward_difference(std::span<const double> q, int i, int j) {
    if (j < 0 || i < 0) fail(errc::invalid_argument, "forward difference order must be non-negative");
    if (i + j >= static_cast<int>(q.size()))
        fail(errc::invalid_argument, "forward difference needs j+1 values from the anchor");
    double s = 0.0;
    for (int h = 0; h <= j; ++h) {
        const double sign = ((j - h) % 2 == 0) ? 1.0 : -1.0;
        s += sign * binomial(j, h) * q[static_cast<size_t>(i + h)];
    }
    return s;
}

matrix gramian(int m, int n) {
    if (m < 0 || n < 0) fail(errc::invalid_argument, "gramian degrees must be non-negative");
    if (m > max_degree || n > max_degree)
        fail(errc::numeric_failure, "gramian degree exceeds the supported maximum " +
                                        std::to_string(max_degree));
    matrix g(m + 1, n + 1);
    const double scale = 1.0 / static_cast<double>(m + n + 1);
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= n; ++j) {
            // C(m,i) C(n,j) / C(m+n, i+j) as an interleaved product of
            // fractions, each factor near 1: numerator factors come from the
            // two small binomials, denominator factors from the large one.
            double v = 1.0;
            int a = 1;          // next factor of C(m, i): (m - i + a) / a, a = 1..i
            int b = 1;          // next factor of C(n, j): (n - j + b) / b, b = 1..j
            for (int c = 1; c <= i + j; ++c) {
                double num;
                if (a <= i) {
                    num = static_cast<double>(m - i + a) / static_cast<double>(a);
                    ++a;
                } else {
                    num = static_cast<double>(n - j + b) / static_cast<double>(b);
                    ++b;
                }
                const double den = static_cast<double>(m + n - i - j + c) / static_cast<double>(c);
                v *= num / den;
            }
            g(i, j) = v * scale;
        }
    }
    return g;
}

} // namespace bm::bernstein
