#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stmodkit/module.hpp"

namespace stmodkit {

/// Projective module in standard form: a direct sum of cyclic projectives
/// A*e_chi, one summand per entry of `summands`. Basis index (j, w) =
/// j * nil_count + w where w runs over the nilpotent monomials; the summand
/// generator sits at w = 0. The actions are exponent shifts (nilpotents) and
/// a diagonal t.
struct StandardProjective {
    AlgebraRef algebra;
    std::vector<std::uint8_t> summands;
    ModuleRep rep;

    std::size_t count() const { return summands.size(); }
    std::size_t nilc() const { return algebra->nil_count(); }
    std::size_t dim() const { return rep.dim; }
    std::size_t basis_index(std::size_t j, std::size_t w) const { return j * nilc() + w; }
    std::size_t generator_index(std::size_t j) const { return basis_index(j, 0); }
    std::size_t summand_of(std::size_t b) const { return b / nilc(); }
    std::size_t monomial_of(std::size_t b) const { return b % nilc(); }

    /// Sparse action of a nilpotent generator (exponent shift).
    Vec apply_nil(std::size_t g, const Vec& v) const {
        Vec out(v.size(), 0);
        std::size_t n = nilc();
        for (std::size_t b = 0; b < v.size(); ++b) {
            if (!v[b]) continue;
            auto e = algebra->nil_exponents(b % n);
            if (e[g] + 1 >= algebra->generators()[g].nilpotency) continue;
            e[g] += 1;
            out[(b / n) * n + algebra->nil_index(e)] = v[b];
        }
        return out;
    }

    /// Sparse action of t (diagonal).
    Vec apply_t(const Vec& v) const {
        const Field f = algebra->field();
        Vec out(v.size(), 0);
        std::size_t n = nilc();
        for (std::size_t b = 0; b < v.size(); ++b) {
            if (!v[b]) continue;
            out[b] = f.mul(v[b],
                           f.mul(algebra->nil_eigenvalue(b % n), summands[b / n]));
        }
        return out;
    }
};

inline StandardProjective make_std_projective(const AlgebraRef& a,
                                              std::vector<std::uint8_t> chis) {
    StandardProjective p;
    p.algebra = a;
    p.summands = std::move(chis);
    const Field f = a->field();
    std::size_t nilc = a->nil_count();
    std::size_t dim = nilc * p.summands.size();
    p.rep.algebra = a;
    p.rep.dim = dim;
    p.rep.nil_action.assign(a->generators().size(), Matrix(f, dim, dim));
    p.rep.t_action = Matrix(f, dim, dim);
    for (std::size_t j = 0; j < p.summands.size(); ++j) {
        for (std::size_t w = 0; w < nilc; ++w) {
            std::size_t b = j * nilc + w;
            auto e = a->nil_exponents(w);
            for (std::size_t g = 0; g < e.size(); ++g) {
                if (e[g] + 1 >= a->generators()[g].nilpotency) continue;
                auto e2 = e;
                e2[g] += 1;
                p.rep.nil_action[g](j * nilc + a->nil_index(e2), b) = 1;
            }
            p.rep.t_action(b, b) = f.mul(a->nil_eigenvalue(w), p.summands[j]);
        }
    }
    return p;
}

/// Extend generator images to a module map out of a standard projective:
/// the column at (j, w) is rho(w) applied to the j-th generator image.
inline Matrix std_map_from_generators(const StandardProjective& p, const ModuleRep& target,
                                      const std::vector<Vec>& gen_images) {
    require(gen_images.size() == p.count(), ErrorKind::DimensionMismatch,
            "one generator image per summand required");
    const AlgebraRef& a = p.algebra;
    Matrix phi(a->field(), target.dim, p.dim());
    std::size_t nilc = p.nilc();
    for (std::size_t j = 0; j < p.count(); ++j) {
        std::vector<Vec> cols(nilc);
        cols[0] = gen_images[j];
        // nil monomials ordered so every w > 0 has a predecessor w - delta_g
        for (std::size_t w = 1; w < nilc; ++w) {
            auto e = a->nil_exponents(w);
            for (std::size_t g = 0; g < e.size(); ++g) {
                if (e[g] == 0) continue;
                auto e2 = e;
                e2[g] -= 1;
                cols[w] = target.nil_action[g].apply(cols[a->nil_index(e2)]);
                break;
            }
        }
        for (std::size_t w = 0; w < nilc; ++w)
            for (std::size_t i = 0; i < target.dim; ++i) phi(i, j * nilc + w) = cols[w][i];
    }
    return phi;
}

/// Multiplicities of the simple tops, together with eigenvector generator
/// lifts into m (one per top basis vector, eigen-projected so each lift is a
/// genuine t-eigenvector).
struct TopData {
    std::vector<std::uint8_t> chis;
    std::vector<Vec> lifts;
};

inline TopData top_generators(const ModuleRep& m) {
    TopData out;
    if (m.dim == 0) return out;
    Subspace rad = radical(m);
    QuotientData q = quotient_module_data(m, rad);
    auto eig = eigenspace_decomposition_t(q.rep);
    for (auto chi : m.algebra->simple_eigenvalues()) {
        const Subspace& e = eig.at(chi);
        for (std::size_t i = 0; i < e.dim(); ++i) {
            Vec lifted = q.lift.transpose().apply(e.basis().row(i));
            Vec v = eigen_project(m, chi, lifted);
            out.chis.push_back(chi);
            out.lifts.push_back(std::move(v));
        }
    }
    return out;
}

struct CoverResult {
    StandardProjective cover;
    Matrix surjection; // m.dim x cover.dim
};

/// Minimal projective cover: one cyclic projective per top basis vector, the
/// surjection lifting the identity on tops.
inline CoverResult projective_cover(const ModuleRep& m) {
    TopData top = top_generators(m);
    CoverResult out;
    out.cover = make_std_projective(m.algebra, top.chis);
    out.surjection = std_map_from_generators(out.cover, m, top.lifts);
    check_invariant(rank_of(out.surjection) == m.dim, "projective-cover",
                    "lifted top generators do not generate");
    return out;
}

/// Isomorphism from a standard projective onto the transpose-dual of A*e_chi.
/// Returns the socle-determined type chi' and the change of basis.
inline std::pair<std::uint8_t, Matrix> dual_std_projective_iso(const AlgebraRef& a,
                                                               std::uint8_t chi) {
    StandardProjective p = make_std_projective(a, {chi});
    ModuleRep d = dual_module(p.rep);
    TopData top = top_generators(d);
    check_invariant(top.chis.size() == 1, "dual-projective", "dual of indecomposable has fat top");
    StandardProjective q = make_std_projective(a, {top.chis[0]});
    Matrix iso = std_map_from_generators(q, d, {top.lifts[0]});
    check_invariant(rank_of(iso) == d.dim, "dual-projective", "dual standardization not iso");
    return {top.chis[0], iso};
}

struct HullResult {
    StandardProjective hull;
    Matrix injection; // hull.dim x m.dim
};

/// Minimal injective hull via the projective cover of the dual: the algebra
/// is self-injective, so hulls are standard projectives too.
inline HullResult injective_hull(const ModuleRep& m) {
    ModuleRep dual = dual_module(m);
    CoverResult c = projective_cover(dual);
    const AlgebraRef& a = m.algebra;
    std::size_t nilc = a->nil_count();
    std::vector<std::uint8_t> chis;
    Matrix blocks(a->field(), c.cover.dim(), c.cover.dim());
    for (std::size_t j = 0; j < c.cover.count(); ++j) {
        auto [chi2, iso] = dual_std_projective_iso(a, c.cover.summands[j]);
        chis.push_back(chi2);
        for (std::size_t r = 0; r < nilc; ++r)
            for (std::size_t cidx = 0; cidx < nilc; ++cidx)
                blocks(j * nilc + r, j * nilc + cidx) = iso(r, cidx);
    }
    HullResult out;
    out.hull = make_std_projective(a, chis);
    // invert the block change of basis: solve blocks * x = (pi^T) column-wise
    Matrix pit = c.surjection.transpose(); // cover.dim x m.dim, the map M = M** -> (cover)*
    Matrix inj(a->field(), c.cover.dim(), m.dim);
    for (std::size_t col = 0; col < m.dim; ++col) {
        Vec b(c.cover.dim());
        for (std::size_t i = 0; i < c.cover.dim(); ++i) b[i] = pit(i, col);
        auto x = solve(blocks, b);
        check_invariant(x.has_value(), "injective-hull", "block change of basis not invertible");
        for (std::size_t i = 0; i < c.cover.dim(); ++i) inj(i, col) = (*x)[i];
    }
    out.injection = std::move(inj);
    check_invariant(rank_of(out.injection) == m.dim, "injective-hull", "hull map not injective");
    return out;
}

/// Intrinsic module structure on an invariant subspace of a standard
/// projective, using the sparse actions. The caller guarantees invariance
/// (kernels of module maps always are).
inline ModuleRep syzygy_module(const StandardProjective& p, const Subspace& s) {
    ModuleRep r;
    r.algebra = p.algebra;
    r.dim = s.dim();
    Field f = p.algebra->field();
    std::size_t ng = p.algebra->generators().size();
    r.nil_action.assign(ng, Matrix(f, s.dim(), s.dim()));
    r.t_action = Matrix(f, s.dim(), s.dim());
    for (std::size_t j = 0; j < s.dim(); ++j) {
        Vec b = s.basis().row(j);
        for (std::size_t g = 0; g < ng; ++g) {
            Vec img = p.apply_nil(g, b);
            Vec c = s.coordinates(img);
            for (std::size_t i = 0; i < s.dim(); ++i) r.nil_action[g](i, j) = c[i];
        }
        Vec imt = p.apply_t(b);
        Vec ct = s.coordinates(imt);
        for (std::size_t i = 0; i < s.dim(); ++i) r.t_action(i, j) = ct[i];
    }
    return r;
}

// --- projectivity and stripping ------------------------------------------------

inline Matrix sigma_action(const ModuleRep& m) {
    Matrix s = Matrix::identity(m.algebra->field(), m.dim);
    const auto& gens = m.algebra->generators();
    for (std::size_t g = 0; g < gens.size(); ++g)
        s = s * m.nil_action[g].pow(gens[g].nilpotency - 1);
    return s;
}

/// Projectivity test: free rank over the Sylow part equals sigma-rank, and the
/// module is projective exactly when that accounts for everything.
inline bool is_projective(const ModuleRep& m) {
    return rank_of(sigma_action(m)) * m.algebra->nil_count() == m.dim;
}

struct StripResult {
    ModuleRep core;
    Subspace core_subspace;                                // in the input coordinates
    Matrix core_embedding;                                 // row i = core basis vector i
    std::vector<std::pair<std::uint8_t, Subspace>> split;  // (type, subspace) per summand
    std::map<std::string, std::size_t> report;             // "P_k" -> count etc.
};

namespace detail {

/// Split one cyclic projective summand generated by the eigenvector v
/// (sigma * v != 0). Returns the retraction onto it; the kernel is a
/// complementary submodule. Built from the symmetrizing trace of the algebra,
/// which averages over the full monomial-times-t basis.
inline Matrix projective_retraction(const ModuleRep& m, const Vec& v, std::uint8_t chi) {
    const AlgebraRef& a = m.algebra;
    const Field f = a->field();
    std::size_t nilc = a->nil_count();
    std::size_t tau = a->t_order();

    // columns u[w][p] = rho(w) rho(t)^p v ; the w-sweep uses the exponent DAG
    std::vector<std::vector<Vec>> u(nilc, std::vector<Vec>(tau));
    u[0][0] = v;
    for (std::size_t p = 1; p < tau; ++p) u[0][p] = m.t_action.apply(u[0][p - 1]);
    for (std::size_t w = 1; w < nilc; ++w) {
        auto e = a->nil_exponents(w);
        for (std::size_t g = 0; g < e.size(); ++g) {
            if (e[g] == 0) continue;
            auto e2 = e;
            e2[g] -= 1;
            std::size_t prev = a->nil_index(e2);
            for (std::size_t p = 0; p < tau; ++p) u[w][p] = m.nil_action[g].apply(u[prev][p]);
            break;
        }
    }

    // the summand basis is {rho(w) v}; t acts on v by the scalar chi
    Matrix basis(f, nilc, m.dim);
    for (std::size_t w = 0; w < nilc; ++w)
        for (std::size_t i = 0; i < m.dim; ++i) basis(w, i) = u[w][0][i];
    check_invariant(rank_of(basis) == nilc, "projective-split",
                    "sigma witness does not generate a free Sylow summand");

    // complete {rho(w) v} to a basis by standard vectors at the non-pivot
    // coordinates, then take the sigma-coordinate functional of the result
    Matrix ext = basis;
    for (std::size_t idx : Subspace::from_rows(basis).complement_indices()) {
        Vec row(m.dim, 0);
        row[idx] = 1;
        ext = Matrix::vstack(ext, Matrix::from_rows(f, {row}));
    }
    check_invariant(ext.rows() == m.dim, "projective-split", "basis extension failed");
    // fvec solves ext * fvec = e_sigma, making x -> <fvec, x> the coordinate
    // functional of rho(sigma) v
    std::size_t sigma_w = a->sigma_nil_index();
    Vec rhs(m.dim, 0);
    rhs[sigma_w] = 1;
    auto fsol = solve(ext, rhs);
    check_invariant(fsol.has_value(), "projective-split", "coordinate solve failed");
    std::uint8_t invtau = a->inverse_tau();
    Vec fvec(m.dim);
    for (std::size_t i = 0; i < m.dim; ++i) fvec[i] = f.mul(invtau, (*fsol)[i]);

    // h[w] = rho(w)^T fvec
    std::vector<Vec> h(nilc);
    h[0] = fvec;
    std::vector<Matrix> nilT;
    for (const auto& act : m.nil_action) nilT.push_back(act.transpose());
    for (std::size_t w = 1; w < nilc; ++w) {
        auto e = a->nil_exponents(w);
        for (std::size_t g = 0; g < e.size(); ++g) {
            if (e[g] == 0) continue;
            auto e2 = e;
            e2[g] -= 1;
            h[w] = nilT[g].apply(h[a->nil_index(e2)]);
            break;
        }
    }
    Matrix tT = m.t_action.transpose();
    std::vector<Matrix> tT_pows = {Matrix::identity(f, m.dim)};
    for (std::size_t p = 1; p < tau; ++p) tT_pows.push_back(tT * tT_pows.back());

    // r' = sum over basis (w, p) of [rho(w) rho(t)^p v] * [c * rho(sigma/w) rho(t)^{-p}]^T f
    Matrix r(f, m.dim, m.dim);
    for (std::size_t w = 0; w < nilc; ++w) {
        // complementary monomial sigma/w
        auto e = a->nil_exponents(w);
        std::vector<std::size_t> ec(e.size());
        for (std::size_t g = 0; g < e.size(); ++g)
            ec[g] = a->generators()[g].nilpotency - 1 - e[g];
        std::size_t wc = a->nil_index(ec);
        std::uint8_t eta_wc = a->nil_eigenvalue(wc);
        for (std::size_t p = 0; p < tau; ++p) {
            // dual basis scalar: lambda((w t^p)(sigma/w t^{-p})) = eta(sigma/w)^p
            std::uint8_t c = f.pow(f.inv(eta_wc), static_cast<long>(p));
            Vec rowvec = tT_pows[(tau - p) % tau].apply(h[wc]);
            const Vec& col = u[w][p];
            for (std::size_t i = 0; i < m.dim; ++i) {
                if (!col[i]) continue;
                std::uint8_t ci = f.mul(c, col[i]);
                for (std::size_t j = 0; j < m.dim; ++j)
                    r(i, j) = f.add(r(i, j), f.mul(ci, rowvec[j]));
            }
        }
    }

    // must restrict to the identity on the summand
    for (std::size_t w = 0; w < nilc; ++w)
        check_invariant(r.apply(u[w][0]) == u[w][0], "projective-split",
                        "trace retraction is not the identity on the summand");
    (void)chi;
    return r;
}

} // namespace detail

/// Split off every projective summand. The core has no projective summands
/// (sigma acts as zero on it); each split summand is returned with its type
/// and its subspace in the input coordinates.
inline StripResult strip_projectives(const ModuleRep& m) {
    StripResult out;
    const AlgebraRef& a = m.algebra;
    const Field f = a->field();
    ModuleRep cur = m;
    Matrix embed = Matrix::identity(f, m.dim); // rows = current basis in input coords
    for (;;) {
        Matrix sig = sigma_action(cur);
        if (rank_of(sig) == 0) break;
        // find an eigenvector not killed by sigma
        Vec v;
        std::uint8_t chi = 1;
        bool found = false;
        auto eig = eigenspace_decomposition_t(cur);
        for (auto c : a->simple_eigenvalues()) {
            const Subspace& e = eig.at(c);
            for (std::size_t i = 0; i < e.dim() && !found; ++i) {
                Vec cand = e.basis().row(i);
                Vec sv = sig.apply(cand);
                for (auto x : sv)
                    if (x) {
                        v = cand;
                        chi = c;
                        found = true;
                        break;
                    }
            }
            if (found) break;
        }
        check_invariant(found, "projective-split", "sigma rank positive but no eigen witness");
        Matrix r = detail::projective_retraction(cur, v, chi);
        // the summand subspace and its complementary kernel
        std::vector<Vec> prows;
        {
            // basis of the summand: columns were recomputed inside the
            // retraction; reconstruct cheaply
            std::vector<Vec> cols(a->nil_count());
            cols[0] = v;
            for (std::size_t w = 1; w < a->nil_count(); ++w) {
                auto e = a->nil_exponents(w);
                for (std::size_t g = 0; g < e.size(); ++g) {
                    if (e[g] == 0) continue;
                    auto e2 = e;
                    e2[g] -= 1;
                    cols[w] = cur.nil_action[g].apply(cols[a->nil_index(e2)]);
                    break;
                }
            }
            prows = cols;
        }
        Subspace summand = Subspace::span_of(f, cur.dim, prows);
        Subspace kernel = nullspace(r);
        check_invariant(kernel.dim() + a->nil_count() == cur.dim, "projective-split",
                        "retraction kernel has wrong dimension");
        // record in input coordinates
        Matrix summand_orig = summand.basis() * embed;
        out.split.emplace_back(chi, Subspace::from_rows(summand_orig));
        out.report["P_" + a->simple_name(chi)] += 1;
        ModuleRep next = sub_module(cur, kernel);
        embed = kernel.basis() * embed;
        cur = std::move(next);
    }
    out.core = cur;
    out.core_embedding = embed;
    out.core_subspace = Subspace::from_rows(embed);
    return out;
}

} // namespace stmodkit
