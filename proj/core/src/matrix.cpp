// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "elbokit/matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "elbokit/error.hpp"

namespace elbokit {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    detail::require_same_size(data_.size(), rows * cols, "Matrix data");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    detail::require_same_size(a.cols(), b.rows(), "matmul inner dimension");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Matrix cholesky(const Matrix& a) {
    detail::require_same_size(a.rows(), a.cols(), "cholesky (square)");
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            diag -= l(j, k) * l(j, k);
        }
        if (!(diag > 0.0) || !std::isfinite(diag)) {
            throw NumericError("cholesky: matrix is not positive definite (pivot " +
                                   std::to_string(j) + ")",
                               j);
        }
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                v -= l(i, k) * l(j, k);
            }
            l(i, j) = v / l(j, j);
        }
    }
    return l;
}

std::vector<double> cholesky_solve(const Matrix& chol, std::span<const double> b) {
    const std::size_t n = chol.rows();
    detail::require_same_size(b.size(), n, "cholesky_solve");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = b[i];
        for (std::size_t k = 0; k < i; ++k) {
            v -= chol(i, k) * y[k];
        }
        y[i] = v / chol(i, i);
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double v = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) {
            v -= chol(k, ii) * x[k];
        }
        x[ii] = v / chol(ii, ii);
    }
    return x;
}

Matrix cholesky_inverse(const Matrix& chol) {
    const std::size_t n = chol.rows();
    Matrix inv(n, n);
    std::vector<double> unit(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        unit.assign(n, 0.0);
        unit[c] = 1.0;
        const auto col = cholesky_solve(chol, unit);
        for (std::size_t r = 0; r < n; ++r) {
            inv(r, c) = col[r];
        }
    }
    // Symmetrize away the last-bit asymmetry of column-wise solves.
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r + 1; c < n; ++c) {
            const double avg = 0.5 * (inv(r, c) + inv(c, r));
            inv(r, c) = avg;
            inv(c, r) = avg;
        }
    }
    return inv;
}

double cholesky_log_det(const Matrix& chol) {
    double total = 0.0;
    for (std::size_t i = 0; i < chol.rows(); ++i) {
        total += std::log(chol(i, i));
    }
    return 2.0 * total;
}

}  // namespace elbokit
