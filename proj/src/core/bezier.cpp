// SPDX-License-Identifier: Apache-2.0
#include "core/bezier.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/gauss_legendre.hpp"

namespace bm {

segment::segment(matrix control_points) : points_(std::move(control_points)) {
    if (points_.rows() < 1 || points_.cols() < 1)
        fail(errc::invalid_argument, "a segment needs at least one control point and one coordinate");
    for (int r = 0; r < points_.rows(); ++r)
        for (int c = 0; c < points_.cols(); ++c)
            if (!std::isfinite(points_(r, c)))
                fail(errc::invalid_argument, "control points must be finite");
}

std::vector<double> evaluate(const segment& s, double u) {
    const int n = s.degree();
    const int d = s.dimension();
    matrix work = s.points();
    const double v = 1.0 - u;
    for (int level = n; level >= 1; --level)
        for (int i = 0; i < level; ++i)
            for (int c = 0; c < d; ++c) work(i, c) = v * work(i, c) + u * work(i + 1, c);
    std::vector<double> p(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c) p[static_cast<size_t>(c)] = work(0, c);
    return p;
}

segment derivative(const segment& s) {
    const int n = s.degree();
    const int d = s.dimension();
    if (n == 0) fail(errc::invalid_argument, "derivative of a degree-0 segment is not defined");
    matrix h(n, d);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c) h(i, c) = n * (s.points()(i + 1, c) - s.points()(i, c));
    return segment(std::move(h));
}

std::vector<double> derivative_at(const segment& s, int order, double u) {
    if (order < 0) fail(errc::invalid_argument, "derivative order must be non-negative");
    segment cur = s;
    for (int j = 0; j < order; ++j) cur = derivative(cur);
    return evaluate(cur, u);
}

segment elevate(const segment& s, int target_degree) {
    if (target_degree < s.degree())
        fail(errc::invalid_argument, "elevation target is below the segment degree");
    matrix pts = s.points();
    const int d = s.dimension();
    for (int n = s.degree(); n < target_degree; ++n) {
        matrix raised(n + 2, d);
        for (int c = 0; c < d; ++c) {
            raised(0, c) = pts(0, c);
            raised(n + 1, c) = pts(n, c);
        }
        for (int i = 1; i <= n; ++i) {
            const double w = static_cast<double>(i) / (n + 1);
            for (int c = 0; c < d; ++c) raised(i, c) = w * pts(i - 1, c) + (1.0 - w) * pts(i, c);
        }
        pts = std::move(raised);
    }
    return segment(std::move(pts));
}

composite_curve::composite_curve(std::vector<segment> segments, std::vector<double> partition)
    : segments_(std::move(segments)), partition_(std::move(partition)) {
    if (segments_.empty()) fail(errc::invalid_argument, "composite curve needs at least one segment");
    const int d = segments_.front().dimension();
    for (const auto& s : segments_) {
        if (s.dimension() != d)
            fail(errc::invalid_argument, "all segments must share one dimension");
        if (s.degree() < 1)
            fail(errc::invalid_argument, "composite segments must have degree at least 1");
    }
    if (partition_.size() != segments_.size() + 1)
        fail(errc::invalid_argument, "partition must hold segment count + 1 knots");
    if (partition_.front() != 0.0 || partition_.back() != 1.0)
        fail(errc::invalid_argument, "partition must start at 0 and end at 1");
    for (size_t i = 1; i < partition_.size(); ++i)
        if (!(partition_[i] > partition_[i - 1]))
            fail(errc::invalid_argument, "partition knots must be strictly increasing");

    for (size_t i = 0; i + 1 < segments_.size(); ++i) {
        const matrix& a = segments_[i].points();
        const matrix& b = segments_[i + 1].points();
        double gap = 0.0;
        for (int c = 0; c < d; ++c)
            gap = std::max(gap, std::abs(a(a.rows() - 1, c) - b(0, c)));
        if (gap > 1e-9)
            warnings_.push_back("segments " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                " do not meet: gap " + std::to_string(gap));
    }
}

int composite_curve::segment_index(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        fail(errc::invalid_argument, "curve parameter must lie in [0, 1]");
    const auto it = std::lower_bound(partition_.begin() + 1, partition_.end(), t);
    return static_cast<int>(it - partition_.begin()) - 1;
}

std::vector<double> composite_curve::evaluate(double t) const {
    const int i = segment_index(t);
    const double t0 = partition_[static_cast<size_t>(i)];
    const double t1 = partition_[static_cast<size_t>(i) + 1];
    return bm::evaluate(segments_[static_cast<size_t>(i)], (t - t0) / (t1 - t0));
}

double arc_length(const segment& s) {
    const segment speed = derivative(s);
    auto norm = [&](double u) {
        const std::vector<double> v = evaluate(speed, u);
        double sq = 0.0;
        for (double x : v) sq += x * x;
        return std::sqrt(sq);
    };
    return quad::integrate_adaptive(norm, 0.0, 1.0);
}

std::vector<double> arc_length_partition(std::span<const segment> segments) {
    if (segments.empty()) fail(errc::invalid_argument, "arc length partition needs segments");
    std::vector<double> cumulative(segments.size() + 1, 0.0);
    for (size_t i = 0; i < segments.size(); ++i) {
        const double len = arc_length(segments[i]);
        if (!(len > 0.0) || !std::isfinite(len))
            fail(errc::constraint_violation,
                 "segment " + std::to_string(i) + " has zero arc length; knots would collide");
        cumulative[i + 1] = cumulative[i] + len;
    }
    const double total = cumulative.back();
    std::vector<double> knots(cumulative.size());
    for (size_t i = 0; i < cumulative.size(); ++i) knots[i] = cumulative[i] / total;
    knots.front() = 0.0;
    knots.back() = 1.0;
    return knots;
}

} // namespace bm
