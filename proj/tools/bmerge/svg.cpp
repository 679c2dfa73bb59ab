// SPDX-License-Identifier: Apache-2.0
#include "bmerge/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace cli {
namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct transform {
    double scale = 1.0;
    double ox = 0.0, oy = 0.0; // data-space origin
    double px = 0.0, py = 0.0; // pixel-space offset
    double height = 0.0;

    std::array<double, 2> apply(const std::array<double, 2>& p) const {
        return {px + (p[0] - ox) * scale, height - (py + (p[1] - oy) * scale)};
    }
};

transform fit(const svg_scene& scene) {
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
    double hi_x = -lo_x, hi_y = -lo_x;
    auto absorb = [&](const std::array<double, 2>& p) {
        lo_x = std::min(lo_x, p[0]);
        hi_x = std::max(hi_x, p[0]);
        lo_y = std::min(lo_y, p[1]);
        hi_y = std::max(hi_y, p[1]);
    };
    for (const auto& path : scene.paths)
        for (const auto& p : path.points) absorb(p);
    for (const auto& m : scene.markers)
        for (const auto& p : m.points) absorb(p);

    transform t;
    t.height = scene.height;
    if (hi_x < lo_x) return t; // nothing to draw

    const double margin = 0.05 * std::min(scene.width, scene.height);
    const double span_x = std::max(hi_x - lo_x, 1e-12);
    const double span_y = std::max(hi_y - lo_y, 1e-12);
    t.scale = std::min((scene.width - 2 * margin) / span_x, (scene.height - 2 * margin) / span_y);
    t.ox = lo_x;
    t.oy = lo_y;
    t.px = (scene.width - span_x * t.scale) / 2;
    t.py = (scene.height - span_y * t.scale) / 2;
    return t;
}

} // namespace

std::string render_svg(const svg_scene& scene) {
    const transform t = fit(scene);
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << scene.width << "\" height=\""
        << scene.height << "\" viewBox=\"0 0 " << scene.width << " " << scene.height << "\">\n"
        << "<rect width=\"" << scene.width << "\" height=\"" << scene.height
        << "\" fill=\"#ffffff\"/>\n";

    for (const auto& path : scene.paths) {
        if (path.points.empty()) continue;
        out << (path.closed ? "<polygon" : "<polyline") << " points=\"";
        bool first = true;
        for (const auto& p : path.points) {
            const auto q = t.apply(p);
            if (!first) out << " ";
            first = false;
            out << num(q[0]) << "," << num(q[1]);
        }
        out << "\" fill=\"none\" stroke=\"" << path.stroke << "\" stroke-width=\""
            << num(path.stroke_width) << "\"";
        if (!path.dash.empty()) out << " stroke-dasharray=\"" << path.dash << "\"";
        out << "/>\n";
    }

    for (const auto& m : scene.markers) {
        for (const auto& p : m.points) {
            const auto q = t.apply(p);
            out << "<circle cx=\"" << num(q[0]) << "\" cy=\"" << num(q[1]) << "\" r=\""
                << num(m.radius) << "\" fill=\"" << m.fill << "\"/>\n";
        }
    }

    out << "</svg>\n";
    return out.str();
}

} // namespace cli
