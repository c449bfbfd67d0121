#pragma once

#include <map>
#include <string>

#include "stmodkit/projectives.hpp"

namespace stmodkit {

/// Multiset of indecomposable summand types with their dimensions.
struct DecompositionReport {
    std::map<std::string, std::size_t> multiplicity;
    std::map<std::string, std::size_t> type_dim;

    std::size_t total_dim() const {
        std::size_t d = 0;
        for (const auto& [name, mult] : multiplicity) d += mult * type_dim.at(name);
        return d;
    }

    std::size_t count(const std::string& name) const {
        auto it = multiplicity.find(name);
        return it == multiplicity.end() ? 0 : it->second;
    }

    void add(const std::string& name, std::size_t dim_each, std::size_t mult) {
        if (mult == 0) return;
        multiplicity[name] += mult;
        type_dim[name] = dim_each;
    }
};

namespace detail {

inline std::size_t rank_on_subspace(const Matrix& act, const Subspace& sp) {
    if (sp.is_zero()) return 0;
    return rank_of(sp.basis() * act.transpose());
}

inline long checked(long v, const char* what) {
    require(v >= 0, ErrorKind::UnclassifiedSummand,
            std::string("negative multiplicity for ") + what +
                " (input is not a sum of the classified types)");
    return v;
}

} // namespace detail

/// Closed-form decomposition of a module over the Sigma3 subalgebra into the
/// six indecomposables k, eps, [k,eps], [eps,k], P_k, P_eps. The
/// classification is complete for arbitrary modules over this algebra; the
/// multiplicities fall out of ranks of Y and Y^2 on the t-eigenspaces.
inline DecompositionReport decompose_sigma3(const ModuleRep& m) {
    const AlgebraRef& a = m.algebra;
    const Field fld = a->field();
    auto eig = eigenspace_decomposition_t(m);
    const Subspace& ep = eig.at(1);
    const Subspace& em = eig.at(fld.neg(1));
    const Matrix& y = m.action("Y");
    Matrix y2 = y * y;
    long p = static_cast<long>(detail::rank_on_subspace(y2, ep));
    long q = static_cast<long>(detail::rank_on_subspace(y2, em));
    long ya = static_cast<long>(detail::rank_on_subspace(y, ep));
    long yb = static_cast<long>(detail::rank_on_subspace(y, em));
    long u_ke = detail::checked(ya - p - q, "[k,eps]");
    long u_ek = detail::checked(yb - p - q, "[eps,k]");
    long mk = detail::checked(static_cast<long>(ep.dim()) - 2 * p - q - u_ke - u_ek, "k");
    long me = detail::checked(static_cast<long>(em.dim()) - p - 2 * q - u_ke - u_ek, "eps");
    DecompositionReport r;
    r.add("k", 1, static_cast<std::size_t>(mk));
    r.add("eps", 1, static_cast<std::size_t>(me));
    r.add("[k,eps]", 2, static_cast<std::size_t>(u_ke));
    r.add("[eps,k]", 2, static_cast<std::size_t>(u_ek));
    r.add("P_k", 3, static_cast<std::size_t>(p));
    r.add("P_eps", 3, static_cast<std::size_t>(q));
    require(r.total_dim() == m.dim, ErrorKind::UnclassifiedSummand,
            "dimension bookkeeping failed in Sigma3 decomposition");
    return r;
}

/// Closed-form decomposition over the 12-dimensional index-2 complement in
/// case B. Complete on sums of {k, omega, omegabar, [omega,omegabar],
/// [omegabar,omega], P_k, P_omega, P_omegabar}; refuses anything else. This
/// list covers every restriction the solver encounters; trivial-type summands
/// only appear for modules that have not been core-reduced.
inline DecompositionReport decompose_klein_complement(const ModuleRep& m) {
    auto eig = eigenspace_decomposition_t(m);
    const Subspace& e1 = eig.at(1);
    const Subspace& ew = eig.at(2);
    const Subspace& ewb = eig.at(3);
    const Matrix& x = m.action("X");
    const Matrix& y = m.action("Y");
    Matrix xy = x * y;
    long p = static_cast<long>(detail::rank_on_subspace(xy, e1));
    long q = static_cast<long>(detail::rank_on_subspace(xy, ew));
    long s = static_cast<long>(detail::rank_on_subspace(xy, ewb));
    long proj = p + q + s;
    long c = detail::checked(static_cast<long>(rank_of(x)) - 2 * proj, "[omega,omegabar]");
    long d = detail::checked(static_cast<long>(rank_of(y)) - 2 * proj, "[omegabar,omega]");
    long aw = detail::checked(static_cast<long>(ew.dim()) - c - d - p - 2 * q - s, "omega");
    long ab = detail::checked(static_cast<long>(ewb.dim()) - c - d - p - q - 2 * s, "omegabar");
    long mk = detail::checked(static_cast<long>(e1.dim()) - 2 * p - q - s, "k");
    DecompositionReport r;
    r.add("k", 1, static_cast<std::size_t>(mk));
    r.add("omega", 1, static_cast<std::size_t>(aw));
    r.add("omegabar", 1, static_cast<std::size_t>(ab));
    r.add("[omega,omegabar]", 2, static_cast<std::size_t>(c));
    r.add("[omegabar,omega]", 2, static_cast<std::size_t>(d));
    r.add("P_k", 4, static_cast<std::size_t>(p));
    r.add("P_omega", 4, static_cast<std::size_t>(q));
    r.add("P_omegabar", 4, static_cast<std::size_t>(s));
    require(r.total_dim() == m.dim, ErrorKind::UnclassifiedSummand,
            "dimension bookkeeping failed in complement decomposition");
    return r;
}

/// Decompose a module over the distinguished subalgebra.
inline DecompositionReport decompose_restriction(const ModuleRep& m) {
    require(m.algebra->is_subalgebra(), ErrorKind::AlgebraMismatch,
            "decompose_restriction expects a module over the distinguished subalgebra");
    return m.algebra->algebra_case() == AlgebraCase::A ? decompose_sigma3(m)
                                                       : decompose_klein_complement(m);
}

/// Induction measure: the difference between the socle of the restriction and
/// the image of Y^2 in case A, and the non-projective dimension of the
/// restriction in case B.
inline std::size_t d_invariant(const ModuleRep& m) {
    require(!m.algebra->is_subalgebra(), ErrorKind::AlgebraMismatch,
            "d_invariant expects a module over the full algebra");
    if (m.algebra->algebra_case() == AlgebraCase::A) {
        const Matrix& y = m.action("Y");
        std::size_t ry = rank_of(y);
        std::size_t ry2 = rank_of(y * y);
        return m.dim - ry - ry2;
    }
    const Matrix xy = m.action("X") * m.action("Y");
    return m.dim - 4 * rank_of(xy);
}

/// Rank data used to compare decompositions at the dimension level.
struct RankProfile {
    std::map<std::uint8_t, std::size_t> eigen_dims;
    std::map<std::string, std::size_t> ranks;

    bool operator==(const RankProfile&) const = default;
};

inline RankProfile rank_profile(const ModuleRep& m) {
    RankProfile r;
    auto eig = eigenspace_decomposition_t(m);
    for (auto& [chi, sp] : eig) r.eigen_dims[chi] = sp.dim();
    for (const auto& g : m.algebra->generators()) {
        const Matrix& act = m.action(g.name);
        r.ranks[g.name] = rank_of(act);
        r.ranks[g.name + g.name] = rank_of(act * act);
        for (auto& [chi, sp] : eig)
            r.ranks[g.name + "|" + m.algebra->simple_name(chi)] =
                detail::rank_on_subspace(act, sp);
    }
    if (m.algebra->generator_index("X") && m.algebra->generator_index("Y"))
        r.ranks["XY"] = rank_of(m.action("X") * m.action("Y"));
    return r;
}

} // namespace stmodkit
