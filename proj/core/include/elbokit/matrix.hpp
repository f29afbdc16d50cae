// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace elbokit {

/// Dense row-major matrix of doubles. Sized for the small networks and
/// oracle models in this toolkit, not for heavy linear algebra.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    Matrix transposed() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);

/// Lower-triangular L with L L^T = a. Throws NumericError if `a` is not
/// (numerically) symmetric positive definite.
Matrix cholesky(const Matrix& a);

/// Solves (L L^T) x = b given the Cholesky factor.
std::vector<double> cholesky_solve(const Matrix& chol, std::span<const double> b);

/// Inverse of L L^T given the Cholesky factor.
Matrix cholesky_inverse(const Matrix& chol);

/// log det(L L^T) given the Cholesky factor.
double cholesky_log_det(const Matrix& chol);

}  // namespace elbokit
