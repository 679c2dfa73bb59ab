// SPDX-License-Identifier: Apache-2.0
#include "core/subdivision.hpp"

#include "core/bernstein.hpp"
#include "core/errors.hpp"

namespace bm::subdivision {
namespace {

void check_interval(int m, double t_prev, double t_cur) {
    if (m < 0) fail(errc::invalid_argument, "restriction degree must be non-negative");
    if (!(0.0 <= t_prev && t_prev < t_cur && t_cur <= 1.0))
        fail(errc::invalid_argument, "restriction interval must satisfy 0 <= t_prev < t_cur <= 1");
}

} // namespace

matrix stage_tail(int m, double lambda) {
    if (m < 0) fail(errc::invalid_argument, "stage degree must be non-negative");
    matrix a(m + 1, m + 1);
    for (int j = 0; j <= m; ++j) {
        const std::vector<double> b = bernstein::basis(m - j, lambda);
        for (int h = 0; h <= m - j; ++h) a(j, j + h) = b[static_cast<size_t>(h)];
    }
    return a;
}

matrix stage_head(int m, double lambda) {
    if (m < 0) fail(errc::invalid_argument, "stage degree must be non-negative");
    matrix a(m + 1, m + 1);
    for (int j = 0; j <= m; ++j) {
        const std::vector<double> b = bernstein::basis(j, lambda);
        for (int h = 0; h <= j; ++h) a(j, h) = b[static_cast<size_t>(h)];
    }
    return a;
}

matrix restriction_direct(int m, double t_prev, double t_cur) {
    check_interval(m, t_prev, t_cur);
    return multiply(stage_tail(m, t_prev / t_cur), stage_head(m, t_cur));
}

matrix restriction_recurrence(int m, double t_prev, double t_cur) {
    check_interval(m, t_prev, t_cur);
    const double dt = t_cur - t_prev;
    matrix d(m + 1, m + 1);

    {
        const std::vector<double> b0 = bernstein::basis(m, t_prev);
        for (int h = 0; h <= m; ++h) d(0, h) = b0[static_cast<size_t>(h)];
    }
    if (m == 0) return d;
    {
        const std::vector<double> bm = bernstein::basis(m, t_cur);
        for (int h = 0; h <= m; ++h) d(m, h) = bm[static_cast<size_t>(h)];
    }
    if (m >= 2) {
        // Rows 1 and m-1 follow from rows 0 and m by one derivative step.
        const std::vector<double> lo = bernstein::basis(m - 1, t_prev);
        const std::vector<double> hi = bernstein::basis(m - 1, t_cur);
        auto shift_diff = [m](const std::vector<double>& b, int h) {
            const double left = (h >= 1) ? b[static_cast<size_t>(h - 1)] : 0.0;
            const double right = (h <= m - 1) ? b[static_cast<size_t>(h)] : 0.0;
            return left - right;
        };
        for (int h = 0; h <= m; ++h) d(1, h) = d(0, h) + dt * shift_diff(lo, h);
        for (int h = 0; h <= m; ++h) d(m - 1, h) = d(m, h) - dt * shift_diff(hi, h);
    }

    // Interior rows from the three-term row relation. LHS couples column
    // neighbors of row h; out-of-range columns contribute zero.
    auto cell = [&](int r, int c) { return (c < 0 || c > m) ? 0.0 : d(r, c); };
    auto column_mix = [&](int h, int j) {
        return dt * ((m - j + 1) * cell(h, j - 1) + (2 * j - m) * cell(h, j) -
                     (j + 1) * cell(h, j + 1));
    };

    const int mid = (m + 1) / 2;
    for (int c = 2; c <= mid; ++c) { // upward: row c from rows c-1, c-2
        const int h = c - 1;
        for (int j = 0; j <= m; ++j)
            d(c, j) = (column_mix(h, j) - (2 * h - m) * d(h, j) + h * d(h - 1, j)) /
                      static_cast<double>(m - h);
    }
    for (int c = m - 2; c > mid; --c) { // downward: row c from rows c+1, c+2
        const int h = c + 1;
        for (int j = 0; j <= m; ++j)
            d(c, j) = ((m - h) * d(h + 1, j) + (2 * h - m) * d(h, j) - column_mix(h, j)) /
                      static_cast<double>(h);
    }
    return d;
}

namespace {

template <typename F>
std::vector<matrix> per_interval(int m, std::span<const double> partition, F&& build) {
    if (partition.size() < 2)
        fail(errc::invalid_argument, "partition must hold at least two knots");
    std::vector<matrix> out;
    out.reserve(partition.size() - 1);
    for (size_t i = 1; i < partition.size(); ++i)
        out.push_back(build(m, partition[i - 1], partition[i]));
    return out;
}

} // namespace

std::vector<matrix> interval_matrices_direct(int m, std::span<const double> partition) {
    return per_interval(m, partition, restriction_direct);
}

std::vector<matrix> interval_matrices_recurrence(int m, std::span<const double> partition) {
    return per_interval(m, partition, restriction_recurrence);
}

std::vector<matrix> interval_matrices(int m, std::span<const double> partition) {
    return m <= 10 ? interval_matrices_direct(m, partition)
                   : interval_matrices_recurrence(m, partition);
}

} // namespace bm::subdivision
