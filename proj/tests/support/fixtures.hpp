// SPDX-License-Identifier: Apache-2.0
// Benchmark curves shared by the unit and acceptance tests.
#pragma once

#include <array>
#include <vector>

#include "core/bezier.hpp"
#include "core/matrix.hpp"

namespace fixtures {

using point2 = std::array<double, 2>;

inline bm::matrix to_matrix(const std::vector<point2>& pts) {
    bm::matrix m(static_cast<int>(pts.size()), 2);
    for (size_t i = 0; i < pts.size(); ++i) {
        m(static_cast<int>(i), 0) = pts[i][0];
        m(static_cast<int>(i), 1) = pts[i][1];
    }
    return m;
}

// Ampersand-shaped curve: three quintic segments.
inline const std::vector<std::vector<point2>>& ampersand_points() {
    static const std::vector<std::vector<point2>> pts = {
        {{0.49, 0.07}, {0.43, 0.22}, {0.08, 0.67}, {0.0, 0.97}, {0.29, 0.98}, {0.36, 0.9}},
        {{0.36, 0.9}, {0.43, 0.84}, {0.43, 0.68}, {0.25, 0.58}, {0.1, 0.36}, {0.09, 0.23}},
        {{0.09, 0.23}, {0.08, 0.13}, {0.14, 0.06}, {0.34, 0.0}, {0.52, 0.08}, {0.48, 0.23}},
    };
    return pts;
}

inline std::vector<bm::segment> ampersand_segments() {
    std::vector<bm::segment> segs;
    for (const auto& pts : ampersand_points()) segs.emplace_back(to_matrix(pts));
    return segs;
}

// The partition the reference error figures use for the ampersand.
inline bm::composite_curve ampersand() {
    return {ampersand_segments(), {0.0, 0.45, 0.76, 1.0}};
}

// D-shaped curve: three cubic segments; the partition comes from arc length.
inline const std::vector<std::vector<point2>>& dcurve_points() {
    static const std::vector<std::vector<point2>> pts = {
        {{0.32, 0.81}, {0.26, 0.59}, {0.18, 0.0}, {0.06, 0.27}},
        {{0.06, 0.27}, {0.0, 0.42}, {0.42, 0.08}, {0.57, 0.25}},
        {{0.57, 0.25}, {0.76, 0.46}, {0.8, 1.0}, {0.22, 0.85}},
    };
    return pts;
}

inline std::vector<bm::segment> dcurve_segments() {
    std::vector<bm::segment> segs;
    for (const auto& pts : dcurve_points()) segs.emplace_back(to_matrix(pts));
    return segs;
}

inline bm::composite_curve dcurve() {
    std::vector<bm::segment> segs = dcurve_segments();
    std::vector<double> knots = bm::arc_length_partition(segs);
    return {std::move(segs), std::move(knots)};
}

} // namespace fixtures
