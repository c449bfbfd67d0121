#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "stmodkit/field.hpp"

namespace stmodkit {

using Vec = std::vector<std::uint8_t>; // coordinate vector of field element codes

/// Dense row-major matrix over one of the small fields. All arithmetic is
/// exact; there is no floating point anywhere in the library.
class Matrix {
public:
    Matrix() : field_(Field::f3()), rows_(0), cols_(0) {}
    Matrix(Field f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static Matrix identity(Field f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(Field f, const std::vector<Vec>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        Matrix m(f, rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == c, ErrorKind::DimensionMismatch, "ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint8_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint8_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    FieldElement elem(std::size_t i, std::size_t j) const {
        return {field_, (*this)(i, j)};
    }

    std::uint8_t* row_ptr(std::size_t i) { return a_.data() + i * cols_; }
    const std::uint8_t* row_ptr(std::size_t i) const { return a_.data() + i * cols_; }

    Vec row(std::size_t i) const { return Vec(row_ptr(i), row_ptr(i) + cols_); }

    bool operator==(const Matrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const {
        for (auto v : a_)
            if (v) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator+(const Matrix& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_,
                ErrorKind::DimensionMismatch, "matrix add shape mismatch");
        Matrix r(field_, rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.add(a_[k], o.a_[k]);
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_,
                ErrorKind::DimensionMismatch, "matrix sub shape mismatch");
        Matrix r(field_, rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.sub(a_[k], o.a_[k]);
        return r;
    }

    Matrix scaled(std::uint8_t c) const {
        Matrix r(field_, rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.mul(a_[k], c);
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        require(cols_ == o.rows_ && field_ == o.field_, ErrorKind::DimensionMismatch,
                "matrix mul shape mismatch");
        Matrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint8_t aik = (*this)(i, k);
                if (!aik) continue;
                const std::uint8_t* src = o.row_ptr(k);
                std::uint8_t* dst = r.row_ptr(i);
                for (std::size_t j = 0; j < o.cols_; ++j)
                    dst[j] = field_.add(dst[j], field_.mul(aik, src[j]));
            }
        }
        return r;
    }

    /// Matrix-vector product (vectors are columns).
    Vec apply(const Vec& x) const {
        require(x.size() == cols_, ErrorKind::DimensionMismatch, "matvec shape mismatch");
        Vec y(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            const std::uint8_t* r = row_ptr(i);
            std::uint8_t acc = 0;
            for (std::size_t j = 0; j < cols_; ++j)
                if (r[j] && x[j]) acc = field_.add(acc, field_.mul(r[j], x[j]));
            y[i] = acc;
        }
        return y;
    }

    Matrix pow(std::size_t e) const {
        require(rows_ == cols_, ErrorKind::DimensionMismatch, "pow of non-square matrix");
        Matrix r = identity(field_, rows_);
        Matrix base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    static Matrix vstack(const Matrix& top, const Matrix& bottom) {
        require(top.cols_ == bottom.cols_ && top.field_ == bottom.field_,
                ErrorKind::DimensionMismatch, "vstack width mismatch");
        Matrix r(top.field_, top.rows_ + bottom.rows_, top.cols_);
        std::copy(top.a_.begin(), top.a_.end(), r.a_.begin());
        std::copy(bottom.a_.begin(), bottom.a_.end(), r.a_.begin() + top.a_.size());
        return r;
    }

    static Matrix hstack(const Matrix& left, const Matrix& right) {
        require(left.rows_ == right.rows_ && left.field_ == right.field_,
                ErrorKind::DimensionMismatch, "hstack height mismatch");
        Matrix r(left.field_, left.rows_, left.cols_ + right.cols_);
        for (std::size_t i = 0; i < left.rows_; ++i) {
            std::copy(left.row_ptr(i), left.row_ptr(i) + left.cols_, r.row_ptr(i));
            std::copy(right.row_ptr(i), right.row_ptr(i) + right.cols_, r.row_ptr(i) + left.cols_);
        }
        return r;
    }

    const std::vector<std::uint8_t>& data() const { return a_; }

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<std::uint8_t> a_;
};

struct RrefResult {
    Matrix mat;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form by Gauss-Jordan elimination. The result is the
/// canonical representative of the row space, so subspace equality is a
/// byte comparison downstream.
inline RrefResult rref(const Matrix& in) {
    Matrix m = in;
    const Field f = m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m(sel, c) == 0) ++sel;
        if (sel == rows) continue;
        if (sel != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(m(r, j), m(sel, j));
        std::uint8_t piv = m(r, c);
        if (piv != 1) {
            std::uint8_t s = f.inv(piv);
            std::uint8_t* pr = m.row_ptr(r);
            for (std::size_t j = c; j < cols; ++j) pr[j] = f.mul(pr[j], s);
        }
        const std::uint8_t* pr = m.row_ptr(r);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::uint8_t factor = m(i, c);
            if (!factor) continue;
            std::uint8_t* ri = m.row_ptr(i);
            for (std::size_t j = c; j < cols; ++j)
                ri[j] = f.sub(ri[j], f.mul(factor, pr[j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), pivots.size(), std::move(pivots)};
}

/// Rank via forward elimination only (no back-substitution).
inline std::size_t rank_of(const Matrix& in) {
    Matrix m = in;
    const Field f = m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m(sel, c) == 0) ++sel;
        if (sel == rows) continue;
        if (sel != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(m(r, j), m(sel, j));
        std::uint8_t s = f.inv(m(r, c));
        std::uint8_t* pr = m.row_ptr(r);
        for (std::size_t j = c; j < cols; ++j) pr[j] = f.mul(pr[j], s);
        for (std::size_t i = r + 1; i < rows; ++i) {
            std::uint8_t factor = m(i, c);
            if (!factor) continue;
            std::uint8_t* ri = m.row_ptr(i);
            for (std::size_t j = c; j < cols; ++j)
                ri[j] = f.sub(ri[j], f.mul(factor, pr[j]));
        }
        ++r;
    }
    return r;
}

/// Inverse of a square matrix, if it exists.
inline std::optional<Matrix> inverse_of(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    std::size_t n = m.rows();
    Matrix aug = Matrix::hstack(m, Matrix::identity(m.field(), n));
    RrefResult rr = rref(aug);
    for (std::size_t i = 0; i < n; ++i)
        if (i >= rr.pivots.size() || rr.pivots[i] != i) return std::nullopt;
    Matrix inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.mat(i, n + j);
    return inv;
}

/// One solution of a*x = b if any.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    require(b.size() == a.rows(), ErrorKind::DimensionMismatch, "solve rhs length mismatch");
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::copy(a.row_ptr(i), a.row_ptr(i) + a.cols(), aug.row_ptr(i));
        aug(i, a.cols()) = b[i];
    }
    RrefResult rr = rref(aug);
    Vec x(a.cols(), 0);
    for (std::size_t i = 0; i < rr.rank; ++i) {
        std::size_t p = rr.pivots[i];
        if (p == a.cols()) return std::nullopt; // pivot in the rhs column: inconsistent
        x[p] = rr.mat(i, a.cols());
    }
    return x;
}

} // namespace stmodkit
