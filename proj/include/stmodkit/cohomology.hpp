#pragma once

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "stmodkit/decompose.hpp"

namespace stmodkit {

enum class ResolutionDirection { projective, injective };

/// A minimal resolution prefix: terms are standard projectives, consecutive
/// differentials compose to zero, images sit inside radicals, and the chain
/// is exact against the augmentation. Projective direction: differentials[i]
/// maps terms[i+1] -> terms[i] and the augmentation maps terms[0] onto M.
/// Injective direction: differentials[i] maps terms[i] -> terms[i+1] and the
/// augmentation embeds M into terms[0].
struct Resolution {
    ResolutionDirection direction = ResolutionDirection::projective;
    std::vector<StandardProjective> terms;
    std::vector<Matrix> differentials;
    Matrix augmentation;
};

namespace detail {

/// One syzygy-chain builder: modules are resolved by repeated minimal covers,
/// each kernel carried along in the coordinates of the previous cover.
class SyzygyChain {
public:
    explicit SyzygyChain(ModuleRep m) : current_(std::move(m)) {}

    // Ensure terms 0..n-1 exist.
    void extend(std::size_t n) {
        while (terms_.size() < n) step();
    }

    std::size_t built() const { return terms_.size(); }
    const StandardProjective& term(std::size_t i) const { return terms_[i]; }
    /// differential i >= 1: term i -> term i-1 (in cover coordinates)
    const Matrix& differential(std::size_t i) const { return diffs_[i - 1]; }
    /// augmentation: term 0 -> module
    const Matrix& augmentation() const { return aug_; }
    const ModuleRep& syzygy(std::size_t i) const { return syzygies_[i]; } // Omega^i

private:
    void step() {
        if (terms_.empty()) syzygies_.push_back(current_);
        CoverResult c = projective_cover(syzygies_.back());
        Matrix pi = c.surjection;
        if (terms_.empty()) {
            aug_ = pi;
        } else {
            // compose with the inclusion of the syzygy into the previous cover
            diffs_.push_back(embeds_.back().transpose() * pi);
        }
        Subspace ker = nullspace(pi);
        ModuleRep next = syzygy_module(c.cover, ker);
        embeds_.push_back(ker.basis());
        terms_.push_back(std::move(c.cover));
        syzygies_.push_back(std::move(next));
    }

    ModuleRep current_;
    std::vector<StandardProjective> terms_;
    std::vector<Matrix> diffs_;
    std::vector<Matrix> embeds_; // kernel basis of term i in term-i coordinates
    std::vector<ModuleRep> syzygies_;
    Matrix aug_;
};

} // namespace detail

/// Complete resolution of a module: the projective resolution spliced at
/// degree zero onto the dualized resolution of the dual module (the algebra
/// is self-injective, so those terms are injective hulls). Terms exist for
/// every integer degree and are extended on demand.
class CompleteResolution {
public:
    explicit CompleteResolution(ModuleRep m)
        : module_(std::move(m)), proj_(module_), inj_(dual_module(module_)) {}

    const ModuleRep& module() const { return module_; }

    void extend(int lo, int hi) {
        if (hi >= 0) proj_.extend(static_cast<std::size_t>(hi) + 1);
        if (lo < 0) ensure_injective(static_cast<std::size_t>(-lo));
    }

    /// Term of the complete resolution at degree i (projective side for
    /// i >= 0, dualized injective side for i < 0).
    const StandardProjective& term(int i) {
        if (i >= 0) {
            proj_.extend(static_cast<std::size_t>(i) + 1);
            return proj_.term(static_cast<std::size_t>(i));
        }
        ensure_injective(static_cast<std::size_t>(-i));
        return inj_terms_[static_cast<std::size_t>(-i) - 1];
    }

    /// Differential d_i : T_i -> T_{i-1}; d_0 is the splice through the
    /// module.
    const Matrix& differential(int i) {
        if (i >= 1) {
            proj_.extend(static_cast<std::size_t>(i) + 1);
            return proj_.differential(static_cast<std::size_t>(i));
        }
        ensure_injective(static_cast<std::size_t>(-i) + 1);
        if (i == 0) return splice_;
        return inj_diffs_[static_cast<std::size_t>(-i) - 1];
    }

private:
    struct DualIso {
        std::uint8_t type;
        Matrix to_raw;   // std P_type coords -> coords of (A e_chi)*
        Matrix from_raw; // inverse
    };

    const DualIso& dual_iso(std::uint8_t chi) {
        auto it = dual_isos_.find(chi);
        if (it != dual_isos_.end()) return it->second;
        auto [chi2, iso] = dual_std_projective_iso(module_.algebra, chi);
        auto inv = inverse_of(iso);
        check_invariant(inv.has_value(), "complete-resolution", "dual iso not invertible");
        return dual_isos_.emplace(chi, DualIso{chi2, iso, *inv}).first->second;
    }

    // out = blockdiag(per-summand small matrices) * m, block row layout nilc
    Matrix blockwise_left(const std::vector<const Matrix*>& blocks, const Matrix& m) const {
        std::size_t nilc = module_.algebra->nil_count();
        const Field f = m.field();
        Matrix out(f, m.rows(), m.cols());
        for (std::size_t s = 0; s < blocks.size(); ++s) {
            const Matrix& b = *blocks[s];
            for (std::size_t i = 0; i < nilc; ++i)
                for (std::size_t k = 0; k < nilc; ++k) {
                    std::uint8_t c = b(i, k);
                    if (!c) continue;
                    const std::uint8_t* src = m.row_ptr(s * nilc + k);
                    std::uint8_t* dst = out.row_ptr(s * nilc + i);
                    for (std::size_t j = 0; j < m.cols(); ++j)
                        dst[j] = f.add(dst[j], f.mul(c, src[j]));
                }
        }
        return out;
    }

    Matrix blockwise_right(const Matrix& m, const std::vector<const Matrix*>& blocks) const {
        std::size_t nilc = module_.algebra->nil_count();
        const Field f = m.field();
        Matrix out(f, m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const std::uint8_t* src = m.row_ptr(i);
            std::uint8_t* dst = out.row_ptr(i);
            for (std::size_t s = 0; s < blocks.size(); ++s) {
                const Matrix& b = *blocks[s];
                for (std::size_t k = 0; k < nilc; ++k) {
                    std::uint8_t c = src[s * nilc + k];
                    if (!c) continue;
                    for (std::size_t j = 0; j < nilc; ++j)
                        dst[s * nilc + j] = f.add(dst[s * nilc + j], f.mul(c, b(k, j)));
                }
            }
        }
        return out;
    }

    void ensure_injective(std::size_t n) {
        // need inj terms 0..n-1 (degrees -1..-n) and the splice
        inj_.extend(n + 1);
        while (inj_terms_.size() < n) {
            std::size_t j = inj_terms_.size();
            const StandardProjective& q = inj_.term(j);
            std::vector<std::uint8_t> chis;
            std::vector<const Matrix*> to_raw, from_raw;
            for (std::size_t s = 0; s < q.count(); ++s) {
                const DualIso& di = dual_iso(q.summands[s]);
                chis.push_back(di.type);
                to_raw.push_back(&di.to_raw);
                from_raw.push_back(&di.from_raw);
            }
            inj_terms_.push_back(make_std_projective(module_.algebra, chis));
            inj_raw_blocks_.push_back(to_raw);
            inj_std_blocks_.push_back(from_raw);
            if (j == 0) {
                // splice T_0 -> T_{-1}: onto M, into the dual of the cover of M*
                proj_.extend(1);
                splice_ = blockwise_left(from_raw,
                                         inj_.augmentation().transpose() * proj_.augmentation());
            } else {
                // T_{-j} -> T_{-j-1} is the transposed differential Q_j -> Q_{j-1}
                Matrix mid = blockwise_right(inj_.differential(j).transpose(),
                                             inj_raw_blocks_[j - 1]);
                inj_diffs_.push_back(blockwise_left(from_raw, mid));
            }
        }
    }

    ModuleRep module_;
    detail::SyzygyChain proj_;
    detail::SyzygyChain inj_; // resolves the dual module
    std::map<std::uint8_t, DualIso> dual_isos_;
    std::vector<StandardProjective> inj_terms_;
    std::vector<std::vector<const Matrix*>> inj_raw_blocks_; // std -> raw per summand
    std::vector<std::vector<const Matrix*>> inj_std_blocks_; // raw -> std per summand
    std::vector<Matrix> inj_diffs_; // inj_diffs_[j-1]: T_{-j} -> T_{-j-1}
    Matrix splice_;
};

/// Public minimal-resolution op. Projective direction resolves by covers;
/// injective direction resolves by hulls (computed through the dual chain so
/// every term is a standard projective).
inline Resolution minimal_resolution(const ModuleRep& m, std::size_t length,
                                     ResolutionDirection dir) {
    Resolution out;
    out.direction = dir;
    if (length == 0) return out;
    if (dir == ResolutionDirection::projective) {
        detail::SyzygyChain chain(m);
        chain.extend(length);
        out.augmentation = chain.augmentation();
        for (std::size_t i = 0; i < length; ++i) out.terms.push_back(chain.term(i));
        for (std::size_t i = 1; i < length; ++i) out.differentials.push_back(chain.differential(i));
        return out;
    }
    ModuleRep cur = m;
    Matrix prev_proj;
    for (std::size_t j = 0; j < length; ++j) {
        HullResult h = injective_hull(cur);
        out.terms.push_back(h.hull);
        if (j == 0)
            out.augmentation = h.injection;
        else
            out.differentials.push_back(h.injection * prev_proj);
        QuotientData q = quotient_module_data(h.hull.rep, column_space(h.injection));
        prev_proj = q.projection;
        cur = q.rep;
    }
    return out;
}

/// First syzygy (kernel of the minimal cover).
inline ModuleRep first_syzygy(const ModuleRep& m) {
    CoverResult c = projective_cover(m);
    return syzygy_module(c.cover, nullspace(c.surjection));
}

/// First cosyzygy (cokernel of the minimal hull).
inline ModuleRep first_cosyzygy(const ModuleRep& m) {
    HullResult h = injective_hull(m);
    return quotient_module(h.hull.rep, column_space(h.injection));
}

// --- Hom complexes -------------------------------------------------------------

namespace detail {

/// Eigen data of the coefficient module, with monomial action images of the
/// eigenbases precomputed: hom spaces out of standard projectives are tuples
/// of eigenspace vectors, so differentials of the Hom complex reduce to
/// table lookups here.
struct HomCoefficientData {
    const ModuleRep* n = nullptr;
    std::map<std::uint8_t, Subspace> eig;
    std::map<std::uint8_t, std::vector<Matrix>> monomial_images; // [chi][w]: dimN x e_chi

    explicit HomCoefficientData(const ModuleRep& mod) : n(&mod) {
        eig = eigenspace_decomposition_t(mod);
        const AlgebraRef& a = mod.algebra;
        for (auto& [chi, sp] : eig) {
            std::vector<Matrix> imgs(a->nil_count());
            imgs[0] = sp.basis().transpose(); // dimN x e
            for (std::size_t w = 1; w < a->nil_count(); ++w) {
                auto e = a->nil_exponents(w);
                for (std::size_t g = 0; g < e.size(); ++g) {
                    if (e[g] == 0) continue;
                    auto e2 = e;
                    e2[g] -= 1;
                    imgs[w] = mod.nil_action[g] * imgs[a->nil_index(e2)];
                    break;
                }
            }
            monomial_images[chi] = std::move(imgs);
        }
    }

    std::size_t hom_dim(const StandardProjective& p) const {
        std::size_t d = 0;
        for (auto chi : p.summands) d += eig.at(chi).dim();
        return d;
    }
};

/// Matrix of Hom(T_i, N) -> Hom(T_{i+1}, N), phi -> phi o d, in the
/// eigen-tuple coordinates.
inline Matrix hom_complex_differential(const StandardProjective& src,
                                       const StandardProjective& dst, const Matrix& d,
                                       const HomCoefficientData& coef) {
    // src = T_i, dst = T_{i+1}, d: dst -> src
    const AlgebraRef& a = src.algebra;
    const Field f = a->field();
    std::size_t nilc = a->nil_count();
    const ModuleRep& n = *coef.n;

    std::vector<std::size_t> src_offsets(src.count() + 1, 0);
    for (std::size_t j = 0; j < src.count(); ++j)
        src_offsets[j + 1] = src_offsets[j] + coef.eig.at(src.summands[j]).dim();
    std::vector<std::size_t> dst_offsets(dst.count() + 1, 0);
    for (std::size_t l = 0; l < dst.count(); ++l)
        dst_offsets[l + 1] = dst_offsets[l] + coef.eig.at(dst.summands[l]).dim();

    Matrix out(f, dst_offsets.back(), src_offsets.back());
    for (std::size_t l = 0; l < dst.count(); ++l) {
        const Subspace& eig_l = coef.eig.at(dst.summands[l]);
        std::size_t el = eig_l.dim();
        if (el == 0) continue;
        std::size_t gen = dst.generator_index(l);
        for (std::size_t j = 0; j < src.count(); ++j) {
            std::uint8_t chi = src.summands[j];
            const Subspace& eig_j = coef.eig.at(chi);
            std::size_t ej = eig_j.dim();
            if (ej == 0) continue;
            const auto& imgs = coef.monomial_images.at(chi);
            // value(s-th basis hom at generator l) = sum_w d[(j,w), gen] * imgs[w][:, s]
            Matrix val(f, n.dim, ej);
            bool any = false;
            for (std::size_t w = 0; w < nilc; ++w) {
                std::uint8_t c = d(src.basis_index(j, w), gen);
                if (!c) continue;
                any = true;
                const Matrix& img = imgs[w];
                for (std::size_t rowi = 0; rowi < n.dim; ++rowi)
                    for (std::size_t s = 0; s < ej; ++s)
                        val(rowi, s) = f.add(val(rowi, s), f.mul(c, img(rowi, s)));
            }
            if (!any) continue;
            // coordinates in the eigenbasis of the target type
            for (std::size_t s2 = 0; s2 < el; ++s2) {
                std::size_t piv = eig_l.pivots()[s2];
                for (std::size_t s = 0; s < ej; ++s)
                    out(dst_offsets[l] + s2, src_offsets[j] + s) = val(piv, s);
            }
        }
    }
    return out;
}

} // namespace detail

/// Dimensions of the complete-resolution Hom-complex cohomology of `target`
/// with coefficients in `coeff`, for every degree in [lo, hi].
inline std::vector<std::size_t> ext_dims(CompleteResolution& target, const ModuleRep& coeff,
                                         int lo, int hi) {
    require(lo <= hi, ErrorKind::BadInput, "empty degree range");
    require_same_algebra(target.module().algebra, coeff.algebra);
    target.extend(lo - 1, hi + 1);
    detail::HomCoefficientData data(coeff);
    std::vector<std::size_t> dims(hi - lo + 1, 0);
    if (coeff.dim == 0) return dims;
    // ranks[i - (lo-1)] = rank of Hom(T_i, N) -> Hom(T_{i+1}, N)
    std::vector<std::size_t> ranks;
    for (int i = lo - 1; i <= hi; ++i) {
        Matrix d = detail::hom_complex_differential(target.term(i), target.term(i + 1),
                                                    target.differential(i + 1), data);
        ranks.push_back(rank_of(d));
    }
    for (int i = lo; i <= hi; ++i) {
        std::size_t h = data.hom_dim(target.term(i));
        std::size_t out_rank = ranks[i - lo + 1];
        std::size_t in_rank = ranks[i - lo];
        dims[i - lo] = h - out_rank - in_rank;
    }
    return dims;
}

/// dim of the Tate ext group in one degree.
inline std::size_t ext_hat(const ModuleRep& m, const ModuleRep& n, int degree) {
    CompleteResolution t(m);
    return ext_dims(t, n, degree, degree)[0];
}

struct TateTable {
    std::string module_label;
    int lo = 0, hi = 0;
    std::vector<std::size_t> dims;

    std::size_t at(int degree) const { return dims[degree - lo]; }
    bool all_zero() const {
        for (auto d : dims)
            if (d) return false;
        return true;
    }
};

/// Engine owning the cached complete resolution of the trivial module; Tate
/// cohomology of arbitrary coefficient modules reuses it.
class CohomologyEngine {
public:
    explicit CohomologyEngine(AlgebraRef a)
        : algebra_(std::move(a)), trivial_resolution_(trivial_module(algebra_)) {}

    const AlgebraRef& algebra() const { return algebra_; }

    TateTable tate(const ModuleRep& m, int lo, int hi) {
        TateTable t;
        t.module_label = m.label;
        t.lo = lo;
        t.hi = hi;
        t.dims = ext_dims(trivial_resolution_, m, lo, hi);
        return t;
    }

    CompleteResolution& trivial_resolution() { return trivial_resolution_; }

private:
    AlgebraRef algebra_;
    CompleteResolution trivial_resolution_;
};

inline TateTable tate_cohomology(const ModuleRep& m, int lo, int hi) {
    CohomologyEngine engine(m.algebra);
    return engine.tate(m, lo, hi);
}

// --- duality -------------------------------------------------------------------

struct DualityReport {
    struct Entry {
        int degree;
        std::size_t forward;  // dim Ext^d(M, N)
        std::size_t backward; // dim Ext^{-d-1}(N, M)
        bool pass;
    };
    std::vector<Entry> entries;
    bool all_pass = true;
};

/// Checks dim Ext^d(M,N) = dim Ext^{-d-1}(N,M) across the range, both sides
/// computed from their own complete resolutions.
inline DualityReport duality_check(const ModuleRep& m, const ModuleRep& n, int lo, int hi) {
    CompleteResolution tm(m), tn(n);
    auto fwd = ext_dims(tm, n, lo, hi);
    auto bwd = ext_dims(tn, m, -hi - 1, -lo - 1);
    DualityReport r;
    for (int d = lo; d <= hi; ++d) {
        std::size_t f = fwd[d - lo];
        std::size_t b = bwd[(-d - 1) - (-hi - 1)];
        bool ok = f == b;
        r.entries.push_back({d, f, b, ok});
        r.all_pass &= ok;
    }
    return r;
}

// --- stable homs (small-scale oracle path) --------------------------------------

/// dim Hom(m, n) modulo maps factoring through a projective, computed from
/// the hom space and the projective cover of n. Quadratic in dimensions, so
/// intended for small modules and cross-checks.
inline std::size_t stable_hom_dim(const ModuleRep& m, const ModuleRep& n) {
    require_same_algebra(m.algebra, n.algebra);
    Subspace homs = hom_space(m, n);
    if (homs.is_zero()) return 0;
    CoverResult c = projective_cover(n);
    Subspace lifts = hom_space(m, c.cover.rep);
    std::vector<Vec> projected;
    for (std::size_t i = 0; i < lifts.dim(); ++i) {
        Matrix g = hom_vector_to_matrix(m, c.cover.rep, lifts.basis().row(i));
        Matrix composed = c.surjection * g;
        Vec flat(m.dim * n.dim);
        for (std::size_t r = 0; r < n.dim; ++r)
            for (std::size_t cc = 0; cc < m.dim; ++cc) flat[r * m.dim + cc] = composed(r, cc);
        projected.push_back(std::move(flat));
    }
    Subspace phom = Subspace::span_of(m.algebra->field(), m.dim * n.dim, projected);
    return homs.dim() - phom.dim();
}

// --- no-cohomology certificates --------------------------------------------------

struct NoCohomologyCertificate {
    std::string module_label;
    std::string subgroup;          // "D" (case A) or "A" (case B)
    bool restriction_projective = false;
    bool socle_free = false;       // Hom_sub(k, restriction) = 0
    std::size_t sigma_rank = 0;
    std::size_t expected_rank = 0;
    std::size_t trivial_socle_dim = 0;

    bool valid() const { return restriction_projective && socle_free; }
};

/// Certificate that the module restricts projectively to the distinguished
/// p-power-index subalgebra with no trivial socle there; both facts together
/// force all Tate cohomology to vanish.
inline NoCohomologyCertificate no_cohomology_certificate(const ModuleRep& m) {
    require(!m.algebra->is_subalgebra(), ErrorKind::BadInput,
            "certificates are issued over the full algebra");
    NoCohomologyCertificate cert;
    cert.module_label = m.label;
    cert.subgroup = m.algebra->algebra_case() == AlgebraCase::A ? "D" : "A";
    ModuleRep res = restrict_module(m);
    cert.sigma_rank = rank_of(sigma_action(res));
    cert.expected_rank = res.algebra->nil_count() == 0 ? 0 : m.dim / res.algebra->nil_count();
    cert.restriction_projective =
        cert.sigma_rank * res.algebra->nil_count() == m.dim;
    // trivial socle of the restriction: joint kernel of the nilpotents and t-1
    Field f = m.algebra->field();
    Matrix stacked = res.t_action - Matrix::identity(f, res.dim);
    for (const auto& act : res.nil_action) stacked = Matrix::vstack(stacked, act);
    cert.trivial_socle_dim = nullspace(stacked).dim();
    cert.socle_free = cert.trivial_socle_dim == 0;
    return cert;
}

} // namespace stmodkit
