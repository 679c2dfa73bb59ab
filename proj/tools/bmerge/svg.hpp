// SPDX-License-Identifier: Apache-2.0
// Deterministic SVG rendering of planar curves: byte-identical output for
// identical inputs, no timestamps or environment-dependent formatting.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cli {

// One polyline plus its drawing style ("" values mean the attribute is omitted).
struct svg_path {
    std::vector<std::array<double, 2>> points;
    std::string stroke;
    double stroke_width = 1.0;
    std::string dash;   // stroke-dasharray value, empty for solid
    bool closed = false;
};

// Circle markers sharing one style (used for control points).
struct svg_markers {
    std::vector<std::array<double, 2>> points;
    std::string fill;
    double radius = 3.0;
};

struct svg_scene {
    int width = 720;
    int height = 720;
    std::vector<svg_path> paths;
    std::vector<svg_markers> markers;
};

// Renders the scene with a white background, a 5% margin, uniform scale and a
// flipped y axis so that larger y is up. Coordinates are written with three
// decimals.
std::string render_svg(const svg_scene& scene);

} // namespace cli
