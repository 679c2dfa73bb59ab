// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/matrix.hpp"

namespace bm {

// One polynomial piece in Bernstein form. Control points are stored as a
// (degree+1) x dimension matrix, one point per row.
class segment {
public:
    explicit segment(matrix control_points);

    [[nodiscard]] int degree() const noexcept { return points_.rows() - 1; }
    [[nodiscard]] int dimension() const noexcept { return points_.cols(); }
    [[nodiscard]] const matrix& points() const noexcept { return points_; }

private:
    matrix points_;
};

// Point at local parameter u by de Casteljau; valid for any real u.
[[nodiscard]] std::vector<double> evaluate(const segment& s, double u);

// Control points of the derivative curve (degree drops by one).
[[nodiscard]] segment derivative(const segment& s);

// order-th derivative with respect to the local parameter, at u.
[[nodiscard]] std::vector<double> derivative_at(const segment& s, int order, double u);

// The same curve written with target_degree + 1 control points. Every step
// is a convex combination of neighbours, so no cancellation occurs.
[[nodiscard]] segment elevate(const segment& s, int target_degree);

// Piecewise Bezier curve over a partition 0 = t_0 < ... < t_s = 1 of [0, 1];
// segment i is traversed for t in [t_i, t_{i+1}] under the local parameter
// u = (t - t_i) / (t_{i+1} - t_i).
class composite_curve {
public:
    composite_curve(std::vector<segment> segments, std::vector<double> partition);

    [[nodiscard]] int dimension() const noexcept { return segments_.front().dimension(); }
    [[nodiscard]] int segment_count() const noexcept { return static_cast<int>(segments_.size()); }
    [[nodiscard]] const segment& piece(int i) const { return segments_.at(static_cast<size_t>(i)); }
    [[nodiscard]] const std::vector<double>& partition() const noexcept { return partition_; }

    // Index of the segment responsible for t; at an interior knot the
    // segment ending there wins, so evaluation is reproducible at joins.
    [[nodiscard]] int segment_index(double t) const;
    [[nodiscard]] std::vector<double> evaluate(double t) const;

    // Non-fatal construction diagnostics (currently: positional mismatches
    // at the joins — the curve is usable either way).
    [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    std::vector<segment> segments_;
    std::vector<double> partition_;
    std::vector<std::string> warnings_;
};

// Arc length of one segment in its local parameter (adaptive quadrature of
// the hodograph speed).
[[nodiscard]] double arc_length(const segment& s);

// Partition proportional to accumulated arc length: t_j = L_j / L_s.
// Fails when any segment has (numerically) zero length, because the knots
// would then collide.
[[nodiscard]] std::vector<double> arc_length_partition(std::span<const segment> segments);

} // namespace bm
