#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "stmodkit/matrix.hpp"

namespace stmodkit {

/// A linear subspace of k^n stored by its reduced-row-echelon basis with zero
/// rows removed. RREF is the canonical representative, so equality of
/// subspaces is bit-exact comparison of the bases.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(Field f, std::size_t ambient) {
        Subspace s;
        s.ambient_ = ambient;
        s.basis_ = Matrix(f, 0, ambient);
        return s;
    }

    static Subspace full(Field f, std::size_t ambient) {
        return from_rows(Matrix::identity(f, ambient));
    }

    /// Canonicalize the row span of an arbitrary matrix.
    static Subspace from_rows(const Matrix& rows) {
        RrefResult rr = rref(rows);
        Subspace s;
        s.ambient_ = rows.cols();
        s.pivots_ = rr.pivots;
        Matrix b(rows.field(), rr.rank, rows.cols());
        for (std::size_t i = 0; i < rr.rank; ++i)
            std::copy(rr.mat.row_ptr(i), rr.mat.row_ptr(i) + rows.cols(), b.row_ptr(i));
        s.basis_ = std::move(b);
        return s;
    }

    static Subspace span_of(Field f, std::size_t ambient, const std::vector<Vec>& vectors) {
        if (vectors.empty()) return zero(f, ambient);
        return from_rows(Matrix::from_rows(f, vectors));
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    const Field& field() const { return basis_.field(); }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

    bool is_zero() const { return dim() == 0; }

    /// Residual of v after reduction by the basis; zero iff v is contained.
    Vec reduce(const Vec& v) const {
        require(v.size() == ambient_, ErrorKind::DimensionMismatch, "reduce length mismatch");
        Vec r = v;
        const Field f = basis_.field();
        for (std::size_t i = 0; i < basis_.rows(); ++i) {
            std::uint8_t c = r[pivots_[i]];
            if (!c) continue;
            const std::uint8_t* row = basis_.row_ptr(i);
            for (std::size_t j = pivots_[i]; j < ambient_; ++j)
                r[j] = f.sub(r[j], f.mul(c, row[j]));
        }
        return r;
    }

    bool contains(const Vec& v) const {
        Vec r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](std::uint8_t x) { return x == 0; });
    }

    bool contains(const Subspace& other) const {
        require(other.ambient_ == ambient_, ErrorKind::DimensionMismatch, "ambient mismatch");
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_.row(i))) return false;
        return true;
    }

    /// Coordinates of v in the RREF basis (entries at pivot columns).
    /// Precondition: contains(v).
    Vec coordinates(const Vec& v) const {
        Vec c(dim());
        for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
        return c;
    }

    /// Indices of the non-pivot coordinates: the canonical complement basis
    /// used for quotient constructions.
    std::vector<std::size_t> complement_indices() const {
        std::vector<std::size_t> out;
        std::size_t pi = 0;
        for (std::size_t j = 0; j < ambient_; ++j) {
            if (pi < pivots_.size() && pivots_[pi] == j) {
                ++pi;
            } else {
                out.push_back(j);
            }
        }
        return out;
    }

private:
    std::size_t ambient_ = 0;
    std::vector<std::size_t> pivots_;
    Matrix basis_{Field::f3(), 0, 0};
};

/// Kernel of m as a subspace of its column-index space.
inline Subspace nullspace(const Matrix& m) {
    RrefResult rr = rref(m);
    const Field f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        Vec v(m.cols(), 0);
        v[j] = 1;
        for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = f.neg(rr.mat(i, j));
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return Subspace::zero(f, m.cols());
    return Subspace::span_of(f, m.cols(), basis);
}

/// Row space of m.
inline Subspace row_space(const Matrix& m) { return Subspace::from_rows(m); }

/// Column space of m (the image of x -> m*x).
inline Subspace column_space(const Matrix& m) { return Subspace::from_rows(m.transpose()); }

inline Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    require(u.ambient_dim() == v.ambient_dim(), ErrorKind::DimensionMismatch,
            "subspace sum ambient mismatch");
    if (u.is_zero()) return v;
    if (v.is_zero()) return u;
    return Subspace::from_rows(Matrix::vstack(u.basis(), v.basis()));
}

/// Intersection via the kernel of stacked bases: solve for coefficient pairs
/// (a, b) with a*U = b*V.
inline Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
    require(u.ambient_dim() == v.ambient_dim(), ErrorKind::DimensionMismatch,
            "subspace intersect ambient mismatch");
    const Field f = u.field();
    std::size_t n = u.ambient_dim();
    if (u.is_zero() || v.is_zero()) return Subspace::zero(f, n);
    // columns are the coefficients, rows the ambient coordinates
    Matrix stacked(f, n, u.dim() + v.dim());
    for (std::size_t j = 0; j < u.dim(); ++j)
        for (std::size_t i = 0; i < n; ++i) stacked(i, j) = u.basis()(j, i);
    for (std::size_t j = 0; j < v.dim(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            stacked(i, u.dim() + j) = f.neg(v.basis()(j, i));
    Subspace coeff = nullspace(stacked);
    std::vector<Vec> vecs;
    for (std::size_t r = 0; r < coeff.dim(); ++r) {
        Vec c = coeff.basis().row(r);
        Vec x(n, 0);
        for (std::size_t j = 0; j < u.dim(); ++j) {
            if (!c[j]) continue;
            const std::uint8_t* row = u.basis().row_ptr(j);
            for (std::size_t i = 0; i < n; ++i) x[i] = f.add(x[i], f.mul(c[j], row[i]));
        }
        vecs.push_back(std::move(x));
    }
    return Subspace::span_of(f, n, vecs);
}

/// Functionals vanishing on v, i.e. the kernel of the basis matrix.
inline Subspace annihilator_functionals(const Subspace& v) {
    if (v.is_zero()) return Subspace::full(v.field(), v.ambient_dim());
    return nullspace(v.basis());
}

/// { x : m*x in v }.
inline Subspace subspace_preimage(const Matrix& m, const Subspace& v) {
    require(m.rows() == v.ambient_dim(), ErrorKind::DimensionMismatch,
            "preimage ambient mismatch");
    Subspace functionals = annihilator_functionals(v);
    if (functionals.is_zero()) return Subspace::full(m.field(), m.cols());
    return nullspace(functionals.basis() * m);
}

inline bool subspace_contains(const Subspace& u, const Vec& v) { return u.contains(v); }

/// Image of v under the linear map m.
inline Subspace subspace_image(const Matrix& m, const Subspace& v) {
    require(m.cols() == v.ambient_dim(), ErrorKind::DimensionMismatch, "image ambient mismatch");
    if (v.is_zero()) return Subspace::zero(m.field(), m.rows());
    return Subspace::from_rows(v.basis() * m.transpose());
}

} // namespace stmodkit
