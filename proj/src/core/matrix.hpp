// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace bm {

// Row-major dense matrix of doubles. Sized for this library's workloads
// (a few thousand entries at most), so everything is straightforward O(n^3)
// textbook code with no blocking or views.
class matrix {
public:
    matrix() = default;
    matrix(int rows, int cols); // zero-initialized

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }

    double& operator()(int r, int c) noexcept { return data_[static_cast<size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const noexcept {
        return data_[static_cast<size_t>(r) * cols_ + c];
    }

    [[nodiscard]] std::span<const double> row(int r) const noexcept {
        return {data_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)};
    }
    [[nodiscard]] std::span<double> row(int r) noexcept {
        return {data_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)};
    }

    [[nodiscard]] static matrix identity(int n);
    [[nodiscard]] matrix transposed() const;

    // Rows/cols are index lists into this matrix; both must be strictly
    // ascending and in range.
    [[nodiscard]] matrix submatrix(std::span<const int> row_ids,
                                   std::span<const int> col_ids) const;

    [[nodiscard]] std::vector<int> all_rows() const;
    [[nodiscard]] std::vector<int> all_cols() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

[[nodiscard]] matrix multiply(const matrix& a, const matrix& b);
[[nodiscard]] std::vector<double> multiply(const matrix& a, std::span<const double> x);
// a^T * x without forming the transpose.
[[nodiscard]] std::vector<double> multiply_transposed(const matrix& a, std::span<const double> x);

[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b);

// Vector counterpart of submatrix: picks v[ids], ids strictly ascending.
[[nodiscard]] std::vector<double> subvector(std::span<const double> v, std::span<const int> ids);

// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
// Throws errc::numeric_failure when a pivot is not strictly positive.
[[nodiscard]] matrix cholesky(const matrix& a);

// Solves a x = b given the Cholesky factor L of a (forward + back substitution).
[[nodiscard]] std::vector<double> cholesky_solve(const matrix& l, std::span<const double> b);

} // namespace bm
