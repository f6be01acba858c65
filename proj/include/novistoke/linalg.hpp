#pragma once

#include "novistoke/field.hpp"

#include <cstddef>
#include <vector>

namespace novistoke {

/// Dense matrix over the base field with exact Gaussian elimination.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FieldScalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const FieldScalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    Matrix transpose() const;
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix scaled(const FieldScalar& c) const;

    std::size_t rank() const;
    /// Basis of the right kernel, as columns of the returned matrix.
    Matrix kernel_basis() const;
    /// Inverse; throws std::domain_error if singular.
    Matrix inverse() const;

    /// Horizontal / vertical stacking.
    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldScalar> data_;
};

/// Row-reduce in place; returns pivot column indices.
std::vector<std::size_t> row_reduce(Matrix& m);

/// Solve A X = B; throws std::domain_error if inconsistent. When the solution
/// is underdetermined, free variables are set to zero.
Matrix solve(const Matrix& a, const Matrix& b);

FieldScalar determinant(const Matrix& m);

/// Coefficients of det(t I - m), lowest degree first.
std::vector<FieldScalar> char_poly(const Matrix& m);

}  // namespace novistoke
