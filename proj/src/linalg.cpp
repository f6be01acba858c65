#include "novistoke/linalg.hpp"

#include <stdexcept>

namespace novistoke {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = FieldScalar(1);
    return m;
}

bool Matrix::is_zero() const
{
    for (const auto& v : data_)
        if (!v.is_zero())
            return false;
    return true;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("Matrix: dimension mismatch in product");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a.at(r, k).is_zero())
                continue;
            for (std::size_t c = 0; c < b.cols_; ++c)
                out.at(r, c) += a.at(r, k) * b.at(k, c);
        }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("Matrix: dimension mismatch in sum");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i)
        out.data_[i] += b.data_[i];
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.scaled(FieldScalar(-1)); }

Matrix Matrix::scaled(const FieldScalar& c) const
{
    Matrix out = *this;
    for (auto& v : out.data_)
        v *= c;
    return out;
}

std::vector<std::size_t> row_reduce(Matrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m.at(p, col).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        for (std::size_t c = 0; c < m.cols(); ++c)
            std::swap(m.at(row, c), m.at(p, c));
        FieldScalar inv = FieldScalar(1) / m.at(row, col);
        for (std::size_t c = col; c < m.cols(); ++c)
            m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero())
                continue;
            FieldScalar f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t Matrix::rank() const
{
    Matrix m = *this;
    return row_reduce(m).size();
}

Matrix Matrix::kernel_basis() const
{
    Matrix m = *this;
    auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::size_t nullity = cols_ - pivots.size();
    Matrix basis(cols_, nullity);
    std::size_t k = 0;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col])
            continue;
        basis.at(free_col, k) = FieldScalar(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis.at(pivots[r], k) = -m.at(r, free_col);
        ++k;
    }
    return basis;
}

Matrix Matrix::inverse() const
{
    if (!is_square())
        throw std::invalid_argument("Matrix: inverse of non-square matrix");
    Matrix aug = hstack(*this, identity(rows_));
    auto pivots = row_reduce(aug);
    if (pivots.size() != rows_ || (rows_ > 0 && pivots.back() >= rows_))
        throw std::domain_error("Matrix: singular matrix has no inverse");
    Matrix inv(rows_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < rows_; ++c)
            inv.at(r, c) = aug.at(r, rows_ + c);
    return inv;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_)
        throw std::invalid_argument("Matrix: hstack row mismatch");
    Matrix out(a.rows_, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t c = 0; c < a.cols_; ++c)
            out.at(r, c) = a.at(r, c);
        for (std::size_t c = 0; c < b.cols_; ++c)
            out.at(r, a.cols_ + c) = b.at(r, c);
    }
    return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.cols_)
        throw std::invalid_argument("Matrix: vstack column mismatch");
    Matrix out(a.rows_ + b.rows_, a.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t c = 0; c < a.cols_; ++c)
            out.at(r, c) = a.at(r, c);
    for (std::size_t r = 0; r < b.rows_; ++r)
        for (std::size_t c = 0; c < b.cols_; ++c)
            out.at(a.rows_ + r, c) = b.at(r, c);
    return out;
}

Matrix solve(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve: row mismatch");
    Matrix aug = Matrix::hstack(a, b);
    auto pivots = row_reduce(aug);
    Matrix x(a.cols(), b.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] >= a.cols())
            throw std::domain_error("solve: inconsistent system");
        for (std::size_t c = 0; c < b.cols(); ++c)
            x.at(pivots[r], c) = aug.at(r, a.cols() + c);
    }
    return x;
}

FieldScalar determinant(const Matrix& m)
{
    if (!m.is_square())
        throw std::invalid_argument("determinant: non-square matrix");
    Matrix a = m;
    std::size_t n = a.rows();
    FieldScalar det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a.at(p, col).is_zero())
            ++p;
        if (p == n)
            return FieldScalar(0);
        if (p != col) {
            for (std::size_t c = col; c < n; ++c)
                std::swap(a.at(col, c), a.at(p, c));
            det = -det;
        }
        det *= a.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a.at(r, col).is_zero())
                continue;
            FieldScalar f = a.at(r, col) / a.at(col, col);
            for (std::size_t c = col; c < n; ++c)
                a.at(r, c) -= f * a.at(col, c);
        }
    }
    return det;
}

std::vector<FieldScalar> char_poly(const Matrix& m)
{
    // Faddeev-LeVerrier; valid in characteristic zero.
    if (!m.is_square())
        throw std::invalid_argument("char_poly: non-square matrix");
    std::size_t n = m.rows();
    std::vector<FieldScalar> c(n + 1);
    c[n] = FieldScalar(1);
    Matrix w = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix aw = m * w;
        FieldScalar tr;
        for (std::size_t i = 0; i < n; ++i)
            tr += aw.at(i, i);
        c[n - k] = -(tr / FieldScalar(Rational(static_cast<int>(k))));
        w = aw + Matrix::identity(n).scaled(c[n - k]);
    }
    return c;
}

std::string Matrix::str() const
{
    std::string out = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        out += r ? "; " : "";
        for (std::size_t c = 0; c < cols_; ++c)
            out += (c ? ", " : "") + at(r, c).str();
    }
    return out + "]";
}

}  // namespace novistoke
