#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stmodkit/filtration.hpp"

namespace stmodkit {

/// Exhaustive submodule lattice of a small module, by closing every cyclic
/// submodule and then saturating under sums. Feasible up to dimension 5 over
/// F2/F3 and 4 over F4.
struct SubmoduleLattice {
    std::vector<Subspace> submodules; // including zero and the whole module
    Subspace socle;
    Subspace radical;
    Subspace max_trivial_submodule;   // largest with all composition factors trivial
    Subspace min_trivial_quotient;    // smallest with all quotient factors trivial
};

namespace detail {

inline bool vec_nonzero(const Vec& v) {
    for (auto c : v)
        if (c) return true;
    return false;
}

inline std::string subspace_key(const Subspace& s) {
    std::string k = std::to_string(s.dim()) + ":";
    for (auto b : s.basis().data()) k += static_cast<char>('0' + b);
    return k;
}

/// All composition factors trivial <=> t acts unipotently on the submodule.
inline bool all_factors_trivial(const ModuleRep& m, const Subspace& s) {
    if (s.is_zero()) return true;
    ModuleRep sub = sub_module(m, s);
    Matrix shift = sub.t_action - Matrix::identity(m.algebra->field(), sub.dim);
    return shift.pow(sub.dim).is_zero();
}

inline bool quotient_factors_trivial(const ModuleRep& m, const Subspace& s) {
    ModuleRep q = quotient_module(m, s);
    if (q.dim == 0) return true;
    Matrix shift = q.t_action - Matrix::identity(m.algebra->field(), q.dim);
    return shift.pow(q.dim).is_zero();
}

} // namespace detail

inline SubmoduleLattice oracle_submodule_enum(const ModuleRep& m) {
    const Field f = m.algebra->field();
    std::size_t limit = f.cardinality == 4 ? 4 : 5;
    require(m.dim <= limit, ErrorKind::TooLarge,
            "exhaustive enumeration is capped at dimension " + std::to_string(limit));
    std::map<std::string, Subspace> seen;
    Subspace zero = Subspace::zero(f, m.dim);
    seen.emplace(detail::subspace_key(zero), zero);
    // cyclic submodules from every vector
    std::size_t total = 1;
    for (std::size_t i = 0; i < m.dim; ++i) total *= f.cardinality;
    for (std::size_t code = 1; code < total; ++code) {
        Vec v(m.dim);
        std::size_t c = code;
        for (std::size_t i = 0; i < m.dim; ++i) {
            v[i] = static_cast<std::uint8_t>(c % f.cardinality);
            c /= f.cardinality;
        }
        Subspace s = submodule_generated(m, {v});
        seen.emplace(detail::subspace_key(s), s);
    }
    // saturate under joins
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Subspace> current;
        for (auto& [k, s] : seen) current.push_back(s);
        for (std::size_t i = 0; i < current.size(); ++i) {
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                Subspace s = subspace_sum(current[i], current[j]);
                auto key = detail::subspace_key(s);
                if (!seen.count(key)) {
                    seen.emplace(key, s);
                    grew = true;
                }
            }
        }
    }
    SubmoduleLattice out;
    for (auto& [k, s] : seen) out.submodules.push_back(s);

    // socle: join of the one-dimensional members
    out.socle = zero;
    for (const auto& s : out.submodules)
        if (s.dim() == 1) out.socle = subspace_sum(out.socle, s);
    // radical: intersection of the maximal proper members
    out.radical = Subspace::full(f, m.dim);
    for (const auto& s : out.submodules) {
        if (s.dim() == m.dim) continue;
        bool maximal = true;
        for (const auto& t : out.submodules)
            if (t.dim() < m.dim && t.dim() > s.dim() && t.contains(s)) maximal = false;
        if (maximal) out.radical = subspace_intersect(out.radical, s);
    }
    // trivial towers
    out.max_trivial_submodule = zero;
    out.min_trivial_quotient = Subspace::full(f, m.dim);
    for (const auto& s : out.submodules) {
        if (detail::all_factors_trivial(m, s))
            out.max_trivial_submodule = subspace_sum(out.max_trivial_submodule, s);
        if (detail::quotient_factors_trivial(m, s))
            out.min_trivial_quotient = subspace_intersect(out.min_trivial_quotient, s);
    }
    return out;
}

/// Brute-force version of the solver's pivot selection: enumerate every
/// vector satisfying the three admissibility conditions and take the smallest
/// cyclic span. Returns nullopt when no vector qualifies.
inline std::optional<std::size_t> oracle_minimal_pivot_span(const ModuleRep& m) {
    const Field f = m.algebra->field();
    require(m.algebra->algebra_case() == AlgebraCase::A && !m.algebra->is_subalgebra(),
            ErrorKind::BadInput, "pivot oracle is a case A notion");
    std::size_t limit = 8;
    require(m.dim <= limit, ErrorKind::TooLarge, "pivot oracle capped at dimension 8");
    const Matrix& y = m.action("Y");
    const Matrix& z = m.action("Z");
    Matrix y2 = y * y;
    Subspace y2m = column_space(y2);
    std::uint8_t eps = f.neg(1);
    std::size_t total = 1;
    for (std::size_t i = 0; i < m.dim; ++i) total *= f.cardinality;
    std::optional<std::size_t> best;
    for (std::size_t code = 1; code < total; ++code) {
        Vec v(m.dim);
        std::size_t c = code;
        for (std::size_t i = 0; i < m.dim; ++i) {
            v[i] = static_cast<std::uint8_t>(c % f.cardinality);
            c /= f.cardinality;
        }
        if (m.t_action.apply(v) != detail::scaled_vec(f, v, eps)) continue;
        if (y2m.contains(v)) continue;
        if (detail::vec_nonzero(y2.apply(v))) continue; // must lie in Ker Y^2
        if (!y2m.contains(z.apply(v))) continue;
        std::size_t d = submodule_generated(m, {v}).dim();
        if (!best || d < *best) best = d;
    }
    return best;
}

/// Generic decomposition by Fitting splittings of endomorphisms, independent
/// of the closed-form rank arithmetic. Splits until every piece is
/// indecomposable, then names the pieces by their rank profiles against the
/// known fixtures of the algebra.
inline DecompositionReport oracle_generic_decompose(const ModuleRep& m) {
    require(m.dim <= 12, ErrorKind::TooLarge, "generic decomposition capped at dimension 12");
    const Field f = m.algebra->field();
    std::vector<ModuleRep> work = {m}, pieces;
    if (m.dim == 0) work.clear();
    while (!work.empty()) {
        ModuleRep cur = std::move(work.back());
        work.pop_back();
        if (cur.dim == 0) continue;
        auto endos = hom_basis_matrices(cur, cur);
        bool split = false;
        // candidate endomorphisms: the basis, then seeded random combinations
        std::vector<Matrix> candidates = endos;
        SeededRng rng(0x5eedULL + cur.dim * 1315423911ULL);
        for (int extra = 0; extra < 40; ++extra) {
            Matrix combo(f, cur.dim, cur.dim);
            for (const auto& e : endos) {
                std::uint8_t c = static_cast<std::uint8_t>(rng.below(f.cardinality));
                if (c) combo = combo + e.scaled(c);
            }
            candidates.push_back(combo);
        }
        for (const auto& phi : candidates) {
            for (std::uint8_t shift = 0; shift < f.cardinality && !split; ++shift) {
                Matrix psi = phi - Matrix::identity(f, cur.dim).scaled(shift);
                Matrix power = psi.pow(cur.dim);
                Subspace ker = nullspace(power);
                if (ker.dim() == 0 || ker.dim() == cur.dim) continue;
                Subspace img = column_space(power);
                if (subspace_intersect(ker, img).dim() != 0) continue;
                work.push_back(sub_module(cur, ker));
                work.push_back(sub_module(cur, img));
                split = true;
            }
            if (split) break;
        }
        if (!split) pieces.push_back(std::move(cur));
    }
    // name the indecomposables by rank profile
    std::vector<std::string> names = {"k"};
    for (auto chi : m.algebra->simple_eigenvalues())
        if (chi != 1) names.push_back(m.algebra->simple_name(chi));
    if (m.algebra->algebra_case() == AlgebraCase::A) {
        names.insert(names.end(), {"[k,eps]", "[eps,k]", "P_k", "P_eps"});
    } else {
        names.insert(names.end(), {"[omega,omegabar]", "[omegabar,omega]", "P_k", "P_omega",
                                   "P_omegabar"});
    }
    std::map<std::string, RankProfile> profiles;
    std::map<std::string, std::size_t> dims;
    for (const auto& name : names) {
        ModuleRep fm = fixture_module(m.algebra, name);
        profiles[name] = rank_profile(fm);
        dims[name] = fm.dim;
    }
    DecompositionReport report;
    for (const auto& p : pieces) {
        RankProfile rp = rank_profile(p);
        std::string found;
        for (const auto& [name, prof] : profiles)
            if (dims[name] == p.dim && prof == rp) {
                found = name;
                break;
            }
        require(!found.empty(), ErrorKind::UnclassifiedSummand,
                "indecomposable of dimension " + std::to_string(p.dim) +
                    " matches no classified type");
        report.add(found, dims[found], 1);
    }
    return report;
}

} // namespace stmodkit
