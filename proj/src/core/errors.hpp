// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bm {

// Error categories carried by every exception thrown from this library.
// They map one-to-one onto the C API status codes and the CLI exit codes.
enum class errc {
    invalid_argument,     // malformed input: bad sizes, out-of-range values
    constraint_violation, // structurally valid input that violates a documented precondition
    solver_failure,       // iteration cap exceeded or no progress possible
    numeric_failure,      // loss of positive definiteness, degree overflow, non-finite data
};

class error : public std::runtime_error {
public:
    error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    [[nodiscard]] errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw error(code, message);
}

} // namespace bm
