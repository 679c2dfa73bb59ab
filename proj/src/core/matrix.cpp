// SPDX-License-Identifier: Apache-2.0
#include "core/matrix.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace bm {

matrix::matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        fail(errc::invalid_argument, "matrix dimensions must be non-negative");
    data_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0.0);
}

matrix matrix::identity(int n) {
    matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

matrix matrix::transposed() const {
    matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

matrix matrix::submatrix(std::span<const int> row_ids, std::span<const int> col_ids) const {
    auto check = [](std::span<const int> ids, int limit, const char* what) {
        int prev = -1;
        for (int id : ids) {
            if (id <= prev)
                fail(errc::invalid_argument,
                     std::string("submatrix ") + what + " indices must be strictly ascending");
            if (id < 0 || id >= limit)
                fail(errc::invalid_argument,
                     std::string("submatrix ") + what + " index out of range");
            prev = id;
        }
    };
    check(row_ids, rows_, "row");
    check(col_ids, cols_, "column");

    matrix s(static_cast<int>(row_ids.size()), static_cast<int>(col_ids.size()));
    for (size_t r = 0; r < row_ids.size(); ++r)
        for (size_t c = 0; c < col_ids.size(); ++c)
            s(static_cast<int>(r), static_cast<int>(c)) = (*this)(row_ids[r], col_ids[c]);
    return s;
}

std::vector<int> matrix::all_rows() const {
    std::vector<int> ids(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) ids[static_cast<size_t>(i)] = i;
    return ids;
}

std::vector<int> matrix::all_cols() const {
    std::vector<int> ids(static_cast<size_t>(cols_));
    for (int i = 0; i < cols_; ++i) ids[static_cast<size_t>(i)] = i;
    return ids;
}

std::vector<double> subvector(std::span<const double> v, std::span<const int> ids) {
    std::vector<double> out;
    out.reserve(ids.size());
    int prev = -1;
    for (int id : ids) {
        if (id <= prev) fail(errc::invalid_argument, "subvector indices must be strictly ascending");
        if (id < 0 || id >= static_cast<int>(v.size()))
            fail(errc::invalid_argument, "subvector index out of range");
        out.push_back(v[static_cast<size_t>(id)]);
        prev = id;
    }
    return out;
}

matrix multiply(const matrix& a, const matrix& b) {
    if (a.cols() != b.rows())
        fail(errc::invalid_argument, "matrix product dimension mismatch");
    matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

std::vector<double> multiply(const matrix& a, std::span<const double> x) {
    if (a.cols() != static_cast<int>(x.size()))
        fail(errc::invalid_argument, "matrix-vector product dimension mismatch");
    std::vector<double> y(static_cast<size_t>(a.rows()), 0.0);
    for (int i = 0; i < a.rows(); ++i) y[static_cast<size_t>(i)] = dot(a.row(i), x);
    return y;
}

std::vector<double> multiply_transposed(const matrix& a, std::span<const double> x) {
    if (a.rows() != static_cast<int>(x.size()))
        fail(errc::invalid_argument, "transposed matrix-vector product dimension mismatch");
    std::vector<double> y(static_cast<size_t>(a.cols()), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        const double xi = x[static_cast<size_t>(i)];
        if (xi == 0.0) continue;
        auto row = a.row(i);
        for (int j = 0; j < a.cols(); ++j) y[static_cast<size_t>(j)] += xi * row[static_cast<size_t>(j)];
    }
    return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

matrix cholesky(const matrix& a) {
    if (a.rows() != a.cols())
        fail(errc::invalid_argument, "cholesky requires a square matrix");
    const int n = a.rows();
    matrix l(n, n);
    for (int j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (int k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0) || !std::isfinite(diag))
            fail(errc::numeric_failure,
                 "cholesky pivot " + std::to_string(j) + " is not positive: matrix is not positive definite");
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return l;
}

std::vector<double> cholesky_solve(const matrix& l, std::span<const double> b) {
    const int n = l.rows();
    if (n != l.cols() || n != static_cast<int>(b.size()))
        fail(errc::invalid_argument, "cholesky_solve dimension mismatch");
    std::vector<double> y(b.begin(), b.end());
    for (int i = 0; i < n; ++i) { // L y = b
        double s = y[static_cast<size_t>(i)];
        for (int k = 0; k < i; ++k) s -= l(i, k) * y[static_cast<size_t>(k)];
        y[static_cast<size_t>(i)] = s / l(i, i);
    }
    for (int i = n - 1; i >= 0; --i) { // L^T x = y
        double s = y[static_cast<size_t>(i)];
        for (int k = i + 1; k < n; ++k) s -= l(k, i) * y[static_cast<size_t>(k)];
        y[static_cast<size_t>(i)] = s / l(i, i);
    }
    return y;
}

} // namespace bm
