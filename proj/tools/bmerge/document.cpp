// SPDX-License-Identifier: Apache-2.0
#include "bmerge/document.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cli {
namespace {

struct token {
    std::string text;
    int column = 0; // 1-based
};

std::vector<token> tokenize(const std::string& line) {
    std::vector<token> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size() || line[i] == '#') break;
        const size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

double parse_real(const token& t, const std::string& path, int line) {
    const char* begin = t.text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw parse_error(path, line, t.column, "expected a number, got '" + t.text + "'");
    return v;
}

int parse_count(const token& t, const std::string& path, int line, const char* what) {
    const char* begin = t.text.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0' || v < 0)
        throw parse_error(path, line, t.column,
                          std::string("expected a non-negative integer ") + what + ", got '" +
                              t.text + "'");
    return static_cast<int>(v);
}

} // namespace

parse_error::parse_error(std::string path, int line, int column, const std::string& message)
    : std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message),
      path_(std::move(path)), line_(line), column_(column) {}

curve_document parse_document(std::istream& in, const std::string& path) {
    curve_document doc;
    bool saw_header = false;
    bool saw_dim = false;
    int pending_points = 0; // point rows still expected for the open segment

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::vector<token> toks = tokenize(line);
        if (toks.empty()) continue;

        if (pending_points > 0) {
            if (static_cast<int>(toks.size()) != doc.dimension)
                throw parse_error(path, line_no, toks[0].column,
                                  "expected " + std::to_string(doc.dimension) +
                                      " coordinates, got " + std::to_string(toks.size()));
            for (const token& t : toks)
                doc.segments.back().points.push_back(parse_real(t, path, line_no));
            --pending_points;
            continue;
        }

        const std::string& head = toks[0].text;
        if (!saw_header) {
            if (head != "curve" || toks.size() != 2)
                throw parse_error(path, line_no, toks[0].column,
                                  "document must start with 'curve <version>'");
            const int version = parse_count(toks[1], path, line_no, "version");
            if (version != 1)
                throw parse_error(path, line_no, toks[1].column,
                                  "unsupported format version " + std::to_string(version));
            saw_header = true;
            continue;
        }

        if (head == "dim") {
            if (saw_dim) throw parse_error(path, line_no, toks[0].column, "duplicate 'dim' line");
            if (toks.size() != 2)
                throw parse_error(path, line_no, toks[0].column, "'dim' takes one value");
            doc.dimension = parse_count(toks[1], path, line_no, "dimension");
            if (doc.dimension < 1)
                throw parse_error(path, line_no, toks[1].column, "dimension must be at least 1");
            saw_dim = true;
        } else if (head == "partition") {
            if (doc.partition)
                throw parse_error(path, line_no, toks[0].column, "duplicate 'partition' line");
            if (toks.size() < 3)
                throw parse_error(path, line_no, toks[0].column,
                                  "'partition' needs at least two knots");
            std::vector<double> knots;
            for (size_t i = 1; i < toks.size(); ++i)
                knots.push_back(parse_real(toks[i], path, line_no));
            doc.partition = std::move(knots);
        } else if (head == "segment") {
            if (!saw_dim)
                throw parse_error(path, line_no, toks[0].column, "'dim' must precede segments");
            if (toks.size() != 2)
                throw parse_error(path, line_no, toks[0].column, "'segment' takes one degree");
            const int degree = parse_count(toks[1], path, line_no, "degree");
            if (degree < 1)
                throw parse_error(path, line_no, toks[1].column, "segment degree must be at least 1");
            doc.segments.push_back({degree, {}});
            pending_points = degree + 1;
        } else {
            throw parse_error(path, line_no, toks[0].column, "unknown directive '" + head + "'");
        }
    }

    if (!saw_header) throw parse_error(path, std::max(line_no, 1), 1, "empty document");
    if (!saw_dim) throw parse_error(path, std::max(line_no, 1), 1, "missing 'dim' line");
    if (pending_points > 0)
        throw parse_error(path, line_no, 1,
                          "segment ends " + std::to_string(pending_points) + " point rows early");
    if (doc.segments.empty())
        throw parse_error(path, std::max(line_no, 1), 1, "document has no segments");
    if (doc.partition && doc.partition->size() != doc.segments.size() + 1)
        throw parse_error(path, std::max(line_no, 1), 1,
                          "partition holds " + std::to_string(doc.partition->size()) +
                              " knots but " + std::to_string(doc.segments.size() + 1) +
                              " are required");
    return doc;
}

curve_document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 1, 1, "cannot open file");
    return parse_document(in, path);
}

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_document(std::ostream& out, const curve_document& doc) {
    out << "curve 1\n";
    out << "dim " << doc.dimension << "\n";
    if (doc.partition) {
        out << "partition";
        for (double t : *doc.partition) out << " " << format_real(t);
        out << "\n";
    }
    for (const auto& seg : doc.segments) {
        out << "segment " << seg.degree << "\n";
        for (int r = 0; r <= seg.degree; ++r) {
            for (int c = 0; c < doc.dimension; ++c) {
                if (c) out << " ";
                out << format_real(seg.points[static_cast<size_t>(r) * doc.dimension + c]);
            }
            out << "\n";
        }
    }
}

void save_document(const std::string& path, const curve_document& doc) {
    std::ofstream out(path);
    if (!out) throw parse_error(path, 1, 1, "cannot open file for writing");
    write_document(out, doc);
    out.flush();
    if (!out) throw parse_error(path, 1, 1, "write failed");
}

} // namespace cli
