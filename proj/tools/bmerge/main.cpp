// SPDX-License-Identifier: Apache-2.0
// bmerge — command-line front end for the beziermerge library.
//
// Exit codes: 0 success, 2 parse error (command line or document),
// 3 specification violation, 4 solver or numeric failure.
#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beziermerge.h"
#include "bmerge/document.hpp"
#include "bmerge/svg.hpp"

namespace {

// Thrown for conditions detected by the CLI itself; `code` is the exit code.
struct command_error : std::runtime_error {
    int code;
    command_error(int exit_code, const std::string& message)
        : std::runtime_error(message), code(exit_code) {}
};

struct api_error : std::runtime_error {
    bm_status status;
    explicit api_error(bm_status s)
        : std::runtime_error(bm_last_error()[0] ? bm_last_error() : "library call failed"),
          status(s) {}
};

void check(bm_status status) {
    if (status != BM_OK) throw api_error(status);
}

struct curve_deleter {
    void operator()(bm_curve* p) const { bm_curve_destroy(p); }
};
struct options_deleter {
    void operator()(bm_options* p) const { bm_options_destroy(p); }
};
struct result_deleter {
    void operator()(bm_result* p) const { bm_result_destroy(p); }
};
using curve_ptr = std::unique_ptr<bm_curve, curve_deleter>;
using options_ptr = std::unique_ptr<bm_options, options_deleter>;
using result_ptr = std::unique_ptr<bm_result, result_deleter>;

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string sig(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        const size_t next = text.find(sep, pos);
        out.push_back(text.substr(pos, next == std::string::npos ? next : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) {
        const char* begin = item.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
            throw command_error(2, "invalid " + what + ": '" + item + "' is not a number");
        out.push_back(v);
    }
    return out;
}

struct box_spec {
    std::vector<double> lower, upper;
};

box_spec parse_box(const std::string& text) {
    const size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw command_error(2, "box must be written lower:upper, e.g. -0.17,0:0.73,1.15");
    box_spec box;
    box.lower = parse_reals(text.substr(0, colon), "box bound");
    box.upper = parse_reals(text.substr(colon + 1), "box bound");
    if (box.lower.size() != box.upper.size())
        throw command_error(2, "box corners differ in dimension");
    return box;
}

// Face tokens: an axis (x, y, z or a 0-based index) followed by - (lower
// bound) or + (upper bound), e.g. "x-,y-" or "0-,1+".
std::vector<int> parse_faces(const std::string& text, int dimension) {
    std::vector<int> out;
    for (const std::string& token : split(text, ',')) {
        if (token.size() < 2)
            throw command_error(2, "invalid face '" + token + "' (expected e.g. x- or 1+)");
        const char side = token.back();
        if (side != '-' && side != '+')
            throw command_error(2, "face '" + token + "' must end in - or +");
        const std::string axis_text = token.substr(0, token.size() - 1);
        int axis = -1;
        if (axis_text == "x") axis = 0;
        else if (axis_text == "y") axis = 1;
        else if (axis_text == "z") axis = 2;
        else {
            const char* begin = axis_text.c_str();
            char* end = nullptr;
            const long v = std::strtol(begin, &end, 10);
            if (end == begin || *end != '\0' || v < 0)
                throw command_error(2, "invalid face axis '" + axis_text + "'");
            axis = static_cast<int>(v);
        }
        if (axis >= dimension)
            throw command_error(2, "face '" + token + "' exceeds curve dimension " +
                                       std::to_string(dimension));
        out.push_back(2 * axis + (side == '+' ? 1 : 0));
    }
    return out;
}

enum class partition_source { document_or_arc_length, arc_length_always };

curve_ptr build_curve(const cli::curve_document& doc, const std::vector<double>* interior_knots,
                      partition_source source) {
    bm_curve* raw = nullptr;
    check(bm_curve_create(doc.dimension, &raw));
    curve_ptr curve(raw);
    for (const auto& seg : doc.segments)
        check(bm_curve_add_segment(curve.get(), seg.degree, seg.points.data()));
    if (interior_knots) {
        std::vector<double> knots;
        knots.reserve(interior_knots->size() + 2);
        knots.push_back(0.0);
        knots.insert(knots.end(), interior_knots->begin(), interior_knots->end());
        knots.push_back(1.0);
        check(bm_curve_set_partition(curve.get(), knots.data(), static_cast<int>(knots.size())));
    } else if (source == partition_source::document_or_arc_length && doc.partition) {
        check(bm_curve_set_partition(curve.get(), doc.partition->data(),
                                     static_cast<int>(doc.partition->size())));
    } else {
        check(bm_curve_arc_length_partition(curve.get()));
    }
    return curve;
}

void report_warnings(const bm_curve* curve) {
    for (int i = 0, n = bm_curve_warning_count(curve); i < n; ++i)
        std::cerr << "warning: " << bm_curve_warning(curve, i) << "\n";
}

// ---- plotting -------------------------------------------------------------

constexpr const char* kOriginalStroke = "#1f4fd8";
constexpr const char* kOriginalPolygon = "#a3b4e4";
constexpr const char* kMergedStroke = "#d82f2f";
constexpr const char* kMergedPolygon = "#e4a3a3";
constexpr const char* kBoxStroke = "#000000";
constexpr const char* kHullStroke = "#666666";
constexpr int kCurveSamples = 512;

void require_planar(int dimension) {
    if (dimension != 2)
        throw command_error(3, "plotting requires a two-dimensional curve (got dimension " +
                                   std::to_string(dimension) + ")");
}

template <typename Eval>
std::vector<std::array<double, 2>> sample_planar(Eval&& eval, int samples) {
    std::vector<std::array<double, 2>> pts(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double t = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
        double p[2];
        eval(t, p);
        pts[static_cast<size_t>(i)] = {p[0], p[1]};
    }
    return pts;
}

std::vector<std::array<double, 2>> segment_points(const bm_curve* curve, int index) {
    const int degree = bm_curve_segment_degree(curve, index);
    std::vector<double> flat(static_cast<size_t>(degree + 1) * 2);
    check(bm_curve_get_segment_points(curve, index, flat.data()));
    std::vector<std::array<double, 2>> pts(static_cast<size_t>(degree + 1));
    for (int i = 0; i <= degree; ++i)
        pts[static_cast<size_t>(i)] = {flat[static_cast<size_t>(2 * i)],
                                       flat[static_cast<size_t>(2 * i + 1)]};
    return pts;
}

// Curve trace, per-segment control polygons, and point markers.
void add_original(cli::svg_scene& scene, const bm_curve* curve) {
    cli::svg_markers markers;
    markers.fill = kOriginalStroke;
    for (int s = 0, n = bm_curve_segment_count(curve); s < n; ++s) {
        cli::svg_path polygon;
        polygon.points = segment_points(curve, s);
        polygon.stroke = kOriginalPolygon;
        for (const auto& p : polygon.points) markers.points.push_back(p);
        scene.paths.push_back(std::move(polygon));
    }
    cli::svg_path trace;
    trace.points = sample_planar(
        [curve](double t, double* p) { check(bm_curve_evaluate(curve, t, p)); }, kCurveSamples);
    trace.stroke = kOriginalStroke;
    trace.stroke_width = 2.0;
    scene.paths.push_back(std::move(trace));
    scene.markers.push_back(std::move(markers));
}

void add_merged(cli::svg_scene& scene, std::vector<std::array<double, 2>> samples,
                std::vector<std::array<double, 2>> control_points) {
    cli::svg_path polygon;
    polygon.points = std::move(control_points);
    polygon.stroke = kMergedPolygon;
    cli::svg_markers markers;
    markers.fill = kMergedStroke;
    markers.points = polygon.points;
    scene.paths.push_back(std::move(polygon));

    cli::svg_path trace;
    trace.points = std::move(samples);
    trace.stroke = kMergedStroke;
    trace.stroke_width = 2.0;
    trace.dash = "7 4";
    scene.paths.push_back(std::move(trace));
    scene.markers.push_back(std::move(markers));
}

void add_box(cli::svg_scene& scene, const box_spec& box) {
    cli::svg_path frame;
    frame.points = {{box.lower[0], box.lower[1]},
                    {box.upper[0], box.lower[1]},
                    {box.upper[0], box.upper[1]},
                    {box.lower[0], box.upper[1]}};
    frame.stroke = kBoxStroke;
    frame.stroke_width = 1.5;
    frame.dash = "10 4 2 4";
    frame.closed = true;
    scene.paths.push_back(std::move(frame));
}

std::vector<std::array<double, 2>> convex_hull(std::vector<std::array<double, 2>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    const auto cross = [](const std::array<double, 2>& o, const std::array<double, 2>& a,
                          const std::array<double, 2>& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<std::array<double, 2>> hull(2 * pts.size());
    size_t h = 0;
    for (const auto& p : pts) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], p) <= 0) --h;
        hull[h++] = p;
    }
    for (size_t i = pts.size() - 1, floor = h + 1; i-- > 0;) {
        while (h >= floor && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
        hull[h++] = pts[i];
    }
    hull.resize(h - 1);
    return hull;
}

void add_hull(cli::svg_scene& scene, const bm_curve* curve) {
    std::vector<std::array<double, 2>> pts;
    for (int s = 0, n = bm_curve_segment_count(curve); s < n; ++s)
        for (const auto& p : segment_points(curve, s)) pts.push_back(p);
    cli::svg_path outline;
    outline.points = convex_hull(std::move(pts));
    outline.stroke = kHullStroke;
    outline.dash = "3 3";
    outline.closed = true;
    scene.paths.push_back(std::move(outline));
}

void write_svg(const std::string& path, const cli::svg_scene& scene) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw command_error(2, "cannot open '" + path + "' for writing");
    out << cli::render_svg(scene);
    out.flush();
    if (!out) throw command_error(2, "write to '" + path + "' failed");
}

// ---- commands ---------------------------------------------------------------

struct partition_args {
    std::string input;
    int digits = 6;
};

int cmd_partition(const partition_args& args) {
    const cli::curve_document doc = cli::load_document(args.input);
    const curve_ptr curve = build_curve(doc, nullptr, partition_source::arc_length_always);
    report_warnings(curve.get());
    std::vector<double> knots(static_cast<size_t>(bm_curve_segment_count(curve.get())) + 1);
    check(bm_curve_get_partition(curve.get(), knots.data()));
    std::string line;
    for (size_t i = 0; i < knots.size(); ++i) {
        if (i) line += " ";
        line += sig(knots[i], args.digits);
    }
    std::cout << line << "\n";
    return 0;
}

struct merge_args {
    std::string input;
    int m = 0;
    int k = 1;
    int l = 1;
    std::string box_text;
    std::string partition_text;
    int samples = 500;
    std::string frame = "local";
    std::string out;
    std::string svg;
};

int cmd_merge(const merge_args& args) {
    const cli::curve_document doc = cli::load_document(args.input);
    std::optional<std::vector<double>> interior;
    if (!args.partition_text.empty())
        interior = parse_reals(args.partition_text, "partition knot");
    const curve_ptr curve =
        build_curve(doc, interior ? &*interior : nullptr, partition_source::document_or_arc_length);
    report_warnings(curve.get());

    bm_options* oraw = nullptr;
    check(bm_options_create(&oraw));
    const options_ptr options(oraw);
    check(bm_options_set_degree(options.get(), args.m));
    check(bm_options_set_continuity(options.get(), args.k, args.l));
    check(bm_options_set_samples(options.get(), args.samples));
    if (args.frame == "global")
        check(bm_options_set_derivative_frame(options.get(), BM_DERIVATIVES_GLOBAL_CURVE));
    else if (args.frame != "local")
        throw command_error(2, "--frame must be 'local' or 'global'");
    std::optional<box_spec> box;
    if (!args.box_text.empty()) {
        box = parse_box(args.box_text);
        check(bm_options_set_box(options.get(), static_cast<int>(box->lower.size()),
                                 box->lower.data(), box->upper.data()));
    }

    bm_result* rraw = nullptr;
    check(bm_merge(curve.get(), options.get(), &rraw));
    const result_ptr result(rraw);

    for (int i = 0, n = bm_result_warning_count(result.get()); i < n; ++i)
        std::cerr << "warning: " << bm_result_warning(result.get(), i) << "\n";

    const int dim = bm_result_dimension(result.get());
    std::cout << "merged " << bm_curve_segment_count(curve.get()) << " segments into a degree "
              << args.m << " curve (continuity orders " << args.k << "/" << args.l << ")\n"
              << "E2 = " << sci(bm_result_error_l2(result.get())) << "\n"
              << "Emax = " << sci(bm_result_error_max(result.get())) << "\n";
    if (box) std::cout << "KKT residual = " << sci(bm_result_kkt_residual(result.get())) << "\n";

    std::vector<int> iterations(static_cast<size_t>(dim));
    check(bm_result_iterations(result.get(), iterations.data()));
    for (int c = 0; c < dim; ++c) {
        std::cout << "coordinate " << c << ": " << iterations[static_cast<size_t>(c)]
                  << (iterations[static_cast<size_t>(c)] == 1 ? " iteration" : " iterations");
        if (box) {
            for (const int side : {0, 1}) {
                const int count = bm_result_active_count(result.get(), c, side);
                std::vector<int> ids(static_cast<size_t>(std::max(count, 0)));
                if (count > 0)
                    check(bm_result_active_indices(result.get(), c, side, ids.data()));
                std::cout << (side ? ", at upper bound {" : ", at lower bound {");
                for (size_t i = 0; i < ids.size(); ++i)
                    std::cout << (i ? " " : "") << ids[i];
                std::cout << "}";
            }
        }
        std::cout << "\n";
    }

    std::vector<double> flat(static_cast<size_t>(args.m + 1) * static_cast<size_t>(dim));
    check(bm_result_get_control_points(result.get(), flat.data()));

    if (!args.out.empty()) {
        cli::curve_document merged;
        merged.dimension = dim;
        merged.segments.push_back({args.m, flat});
        cli::save_document(args.out, merged);
    }

    if (!args.svg.empty()) {
        require_planar(dim);
        cli::svg_scene scene;
        add_original(scene, curve.get());
        std::vector<std::array<double, 2>> control_points(static_cast<size_t>(args.m + 1));
        for (int i = 0; i <= args.m; ++i)
            control_points[static_cast<size_t>(i)] = {flat[static_cast<size_t>(2 * i)],
                                                      flat[static_cast<size_t>(2 * i + 1)]};
        bm_result* r = result.get();
        add_merged(scene,
                   sample_planar([r](double t, double* p) { check(bm_result_evaluate(r, t, p)); },
                                 kCurveSamples),
                   std::move(control_points));
        if (box) add_box(scene, *box);
        write_svg(args.svg, scene);
    }
    return 0;
}

struct plot_args {
    std::string original;
    std::string merged;
    std::string svg;
    std::string box_text;
    bool hull = false;
    int width = 720;
    int height = 720;
};

int cmd_plot(const plot_args& args) {
    const cli::curve_document doc = cli::load_document(args.original);
    require_planar(doc.dimension);
    const curve_ptr curve = build_curve(doc, nullptr, partition_source::document_or_arc_length);
    report_warnings(curve.get());

    cli::svg_scene scene;
    scene.width = args.width;
    scene.height = args.height;
    if (args.hull) add_hull(scene, curve.get());
    add_original(scene, curve.get());

    if (!args.merged.empty()) {
        const cli::curve_document mdoc = cli::load_document(args.merged);
        require_planar(mdoc.dimension);
        const curve_ptr mcurve =
            build_curve(mdoc, nullptr, partition_source::document_or_arc_length);
        report_warnings(mcurve.get());
        std::vector<std::array<double, 2>> control_points;
        for (int s = 0, n = bm_curve_segment_count(mcurve.get()); s < n; ++s)
            for (const auto& p : segment_points(mcurve.get(), s)) control_points.push_back(p);
        bm_curve* mc = mcurve.get();
        add_merged(scene,
                   sample_planar([mc](double t, double* p) { check(bm_curve_evaluate(mc, t, p)); },
                                 kCurveSamples),
                   std::move(control_points));
    }

    if (!args.box_text.empty()) {
        const box_spec box = parse_box(args.box_text);
        if (box.lower.size() != 2) throw command_error(2, "plot boxes are two-dimensional");
        add_box(scene, box);
    }

    write_svg(args.svg, scene);
    return 0;
}

struct suggest_args {
    std::string input;
    double step = 0.0;
    std::string previous_text;
    std::string faces_text;
    int m = 0;
    int k = 1;
    int l = 1;
};

int cmd_suggest_box(const suggest_args& args) {
    const cli::curve_document doc = cli::load_document(args.input);
    const curve_ptr curve = build_curve(doc, nullptr, partition_source::document_or_arc_length);
    report_warnings(curve.get());
    const int dim = bm_curve_dimension(curve.get());

    std::vector<double> lower(static_cast<size_t>(dim)), upper(static_cast<size_t>(dim));
    if (args.previous_text.empty()) {
        if (args.step != 0.0 || !args.faces_text.empty())
            throw command_error(2, "--step and --faces require --previous");
        check(bm_suggest_box(curve.get(), lower.data(), upper.data()));
    } else {
        const box_spec previous = parse_box(args.previous_text);
        if (!args.faces_text.empty()) {
            const std::vector<int> faces = parse_faces(args.faces_text, dim);
            check(bm_expand_box(curve.get(), previous.lower.data(), previous.upper.data(),
                                args.step, faces.data(), static_cast<int>(faces.size()), nullptr,
                                lower.data(), upper.data()));
        } else if (args.m > 0) {
            bm_options* oraw = nullptr;
            check(bm_options_create(&oraw));
            const options_ptr options(oraw);
            check(bm_options_set_degree(options.get(), args.m));
            check(bm_options_set_continuity(options.get(), args.k, args.l));
            check(bm_expand_box(curve.get(), previous.lower.data(), previous.upper.data(),
                                args.step, nullptr, 0, options.get(), lower.data(), upper.data()));
        } else if (args.step == 0.0) {
            lower = previous.lower;
            upper = previous.upper;
        } else {
            throw command_error(2, "expansion needs --faces, or --m to pick faces automatically");
        }
    }

    const auto joined = [](const std::vector<double>& v, int digits) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += sig(v[i], digits);
        }
        return s;
    };
    std::string lower_line, upper_line;
    for (size_t i = 0; i < lower.size(); ++i) {
        lower_line += (i ? " " : "") + sig(lower[i], 6);
        upper_line += (i ? " " : "") + sig(upper[i], 6);
    }
    std::cout << "lower: " << lower_line << "\n"
              << "upper: " << upper_line << "\n"
              << "box " << joined(lower, 17) << ":" << joined(upper, 17) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Merge composite Bezier curves into a single Bezier curve"};
    app.set_version_flag("--version", bm_version());
    app.require_subcommand(1);

    partition_args part;
    CLI::App* partition_cmd =
        app.add_subcommand("partition", "Print the arc-length partition of a curve");
    partition_cmd->add_option("input", part.input, "curve document")->required();
    partition_cmd->add_option("--digits", part.digits, "significant digits (default 6)")
        ->check(CLI::Range(1, 17));

    merge_args merge;
    CLI::App* merge_cmd = app.add_subcommand("merge", "Merge a curve into a single Bezier curve");
    merge_cmd->add_option("input", merge.input, "curve document")->required();
    merge_cmd->add_option("--m", merge.m, "degree of the merged curve")->required();
    merge_cmd->add_option("--k", merge.k, "continuity order at t=0 (default 1)");
    merge_cmd->add_option("--l", merge.l, "continuity order at t=1 (default 1)");
    merge_cmd->add_option("--box", merge.box_text,
                          "box bounds for free control points, lower:upper (comma-separated "
                          "coordinates)");
    merge_cmd->add_option("--partition", merge.partition_text,
                          "interior partition knots t1,...,t_{s-1} (overrides the document)");
    merge_cmd->add_option("--samples", merge.samples, "sampling density for Emax (default 500)");
    merge_cmd->add_option("--frame", merge.frame,
                          "endpoint derivative frame: local (default) or global");
    merge_cmd->add_option("--out", merge.out, "write the merged curve to this document");
    merge_cmd->add_option("--svg", merge.svg, "plot original and merged curves to this SVG file");

    plot_args plot;
    CLI::App* plot_cmd = app.add_subcommand("plot", "Render curves to an SVG file");
    plot_cmd->add_option("original", plot.original, "curve document")->required();
    plot_cmd->add_option("merged", plot.merged, "merged curve document to overlay");
    plot_cmd->add_option("--svg", plot.svg, "output SVG path")->required();
    plot_cmd->add_option("--box", plot.box_text, "draw a box frame, lower:upper");
    plot_cmd->add_flag("--hull", plot.hull, "draw the convex hull of the control points");
    plot_cmd->add_option("--width", plot.width, "canvas width (default 720)")
        ->check(CLI::PositiveNumber);
    plot_cmd->add_option("--height", plot.height, "canvas height (default 720)")
        ->check(CLI::PositiveNumber);

    suggest_args suggest;
    CLI::App* suggest_cmd =
        app.add_subcommand("suggest-box", "Suggest or expand box bounds for a curve");
    suggest_cmd->add_option("input", suggest.input, "curve document")->required();
    suggest_cmd->add_option("--step", suggest.step, "expansion step relative to the box diagonal")
        ->check(CLI::NonNegativeNumber);
    suggest_cmd->add_option("--previous", suggest.previous_text,
                            "box to expand, lower:upper (omit for the control-point extent)");
    suggest_cmd->add_option("--faces", suggest.faces_text,
                            "faces to move, e.g. x-,y- (axis letter or index, then - or +)");
    suggest_cmd->add_option("--m", suggest.m, "merged degree for automatic face selection");
    suggest_cmd->add_option("--k", suggest.k, "continuity order at t=0 (default 1)");
    suggest_cmd->add_option("--l", suggest.l, "continuity order at t=1 (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*partition_cmd) return cmd_partition(part);
        if (*merge_cmd) return cmd_merge(merge);
        if (*plot_cmd) return cmd_plot(plot);
        if (*suggest_cmd) return cmd_suggest_box(suggest);
    } catch (const cli::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const command_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const api_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return (e.status == BM_ERR_INVALID_ARGUMENT || e.status == BM_ERR_CONSTRAINT) ? 3 : 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
