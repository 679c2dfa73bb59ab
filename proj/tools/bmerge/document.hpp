// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

// Line-oriented curve interchange format (see data/FORMAT.md):
//
//   curve 1
//   dim 2
//   partition 0 0.45 0.76 1     # optional
//   segment 5
//   0.49 0.07
//   ...
//
// '#' starts a comment; blank lines are ignored.
struct curve_document {
    struct segment {
        int degree = 0;
        std::vector<double> points; // (degree+1) * dimension, row-major
    };
    int dimension = 0;
    std::vector<segment> segments;
    std::optional<std::vector<double>> partition;
};

class parse_error : public std::runtime_error {
public:
    parse_error(std::string path, int line, int column, const std::string& message);
    [[nodiscard]] const std::string& path() const noexcept { return path_; }
    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }

private:
    std::string path_;
    int line_;
    int column_;
};

[[nodiscard]] curve_document parse_document(std::istream& in, const std::string& path);
[[nodiscard]] curve_document load_document(const std::string& path);

// Full-precision serialization; parse(serialize(d)) reproduces d exactly.
void write_document(std::ostream& out, const curve_document& doc);
void save_document(const std::string& path, const curve_document& doc);

} // namespace cli
