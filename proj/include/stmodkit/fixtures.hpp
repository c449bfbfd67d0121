#pragma once

#include <string>
#include <vector>

#include "stmodkit/decompose.hpp"

namespace stmodkit {

/// Uniserial module with the given composition series, top first. Each step
/// uses the unique generator whose commutation eigenvalue matches the ratio
/// of consecutive factors (Z for ratio 1). The construction is validated
/// against the relations before returning.
inline ModuleRep uniserial_module(const AlgebraRef& a, const std::vector<std::uint8_t>& chis) {
    require(!chis.empty(), ErrorKind::BadInput, "empty composition series");
    const Field f = a->field();
    std::size_t n = chis.size();
    ModuleRep m;
    m.algebra = a;
    m.dim = n;
    m.nil_action.assign(a->generators().size(), Matrix(f, n, n));
    m.t_action = Matrix(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.t_action(i, i) = chis[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::uint8_t ratio = f.div(chis[i + 1], chis[i]);
        bool placed = false;
        for (std::size_t g = 0; g < a->generators().size(); ++g) {
            if (a->generators()[g].t_eigenvalue == ratio) {
                m.nil_action[g](i + 1, i) = 1;
                placed = true;
                break;
            }
        }
        require(placed, ErrorKind::BadInput, "no generator realizes the eigenvalue step");
    }
    require_valid(m);
    std::string lbl = "[";
    for (std::size_t i = 0; i < n; ++i) {
        if (i) lbl += ",";
        lbl += a->simple_name(chis[i]);
    }
    m.label = lbl + "]";
    return m;
}

/// The trivial module of the distinguished subalgebra induced up: a uniserial
/// chain of trivial factors linked by Z, of length equal to the subalgebra
/// index (3^r in case A, 2 in case B).
inline ModuleRep induced_trivial_module(const AlgebraRef& a) {
    require(!a->is_subalgebra(), ErrorKind::BadInput, "induce from the subalgebra upward");
    std::size_t len = a->dim() / a->distinguished_subalgebra()->dim();
    return uniserial_module(a, std::vector<std::uint8_t>(len, 1));
}

/// Named module lookup used by extension sampling, reassembly checks and the
/// CLI: simple names, "P_<simple>", "[s1,s2,...]" uniserials, "induced_k",
/// "regular".
inline ModuleRep fixture_module(const AlgebraRef& a, const std::string& name) {
    if (name == "regular") return regular_module(a);
    if (name == "induced_k") return induced_trivial_module(a);
    if (auto chi = a->simple_eigenvalue_of_name(name)) return simple_module(a, *chi);
    if (name.rfind("P_", 0) == 0) {
        auto chi = a->simple_eigenvalue_of_name(name.substr(2));
        require(chi.has_value(), ErrorKind::BadInput, "unknown projective " + name);
        StandardProjective p = make_std_projective(a, {*chi});
        ModuleRep m = p.rep;
        m.label = name;
        return m;
    }
    if (name.size() >= 2 && name.front() == '[' && name.back() == ']') {
        std::vector<std::uint8_t> chis;
        std::string inner = name.substr(1, name.size() - 2);
        std::size_t pos = 0;
        while (pos <= inner.size()) {
            std::size_t comma = inner.find(',', pos);
            std::string part = inner.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
            auto chi = a->simple_eigenvalue_of_name(part);
            require(chi.has_value(), ErrorKind::BadInput, "unknown simple " + part);
            chis.push_back(*chi);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return uniserial_module(a, chis);
    }
    fail(ErrorKind::BadInput, "unknown fixture name " + name);
}

/// Direct sum of the summands named in a decomposition report, for
/// rank-profile comparisons.
inline ModuleRep assemble_report(const AlgebraRef& a, const DecompositionReport& r) {
    ModuleRep m = zero_module(a);
    for (const auto& [name, mult] : r.multiplicity)
        for (std::size_t i = 0; i < mult; ++i) m = direct_sum(m, fixture_module(a, name));
    return m;
}

/// Entrywise field conjugation of a case-B module with the X and Y actions
/// swapped (conjugation turns the omega commutation rule into the omegabar
/// one), producing the mirror module that exercises the symmetric solver
/// branch.
inline ModuleRep frobenius_conjugate_module(const ModuleRep& m) {
    require(m.algebra->algebra_case() == AlgebraCase::B, ErrorKind::BadInput,
            "frobenius conjugation mirrors case-B modules");
    ModuleRep c = m;
    auto conj = [&](Matrix mat) {
        for (std::size_t i = 0; i < mat.rows(); ++i)
            for (std::size_t j = 0; j < mat.cols(); ++j)
                mat(i, j) = conjugate(FieldElement{m.algebra->field(), mat(i, j)}).code;
        return mat;
    };
    std::size_t xi = *m.algebra->generator_index("X");
    std::size_t yi = *m.algebra->generator_index("Y");
    c.nil_action[xi] = conj(m.nil_action[yi]);
    c.nil_action[yi] = conj(m.nil_action[xi]);
    for (std::size_t g = 0; g < c.nil_action.size(); ++g)
        if (g != xi && g != yi) c.nil_action[g] = conj(m.nil_action[g]);
    c.t_action = conj(m.t_action);
    require_valid(c);
    return c;
}

} // namespace stmodkit
