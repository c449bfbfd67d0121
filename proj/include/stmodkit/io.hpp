#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "stmodkit/decompose.hpp"
#include "stmodkit/filtration.hpp"

namespace stmodkit {

using Json = nlohmann::ordered_json;

inline Json algebra_to_json(const AlgebraRef& a) {
    Json j;
    j["case"] = a->algebra_case() == AlgebraCase::A ? "A" : "B";
    if (a->algebra_case() == AlgebraCase::A) j["r"] = a->r();
    return j;
}

inline AlgebraRef algebra_from_json(const Json& j) {
    require(j.contains("case"), ErrorKind::BadInput, "missing algebra case");
    std::string c = j.at("case").get<std::string>();
    if (c == "A") {
        require(j.contains("r"), ErrorKind::BadInput, "case A needs r");
        return AlgebraPresentation::case_a(j.at("r").get<unsigned>());
    }
    if (c == "B") return AlgebraPresentation::case_b();
    fail(ErrorKind::BadInput, "unknown algebra case '" + c + "'");
}

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& j, Field f, std::size_t rows, std::size_t cols) {
    require(j.is_array() && j.size() == rows, ErrorKind::BadInput, "matrix row count mismatch");
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j.at(i);
        require(row.is_array() && row.size() == cols, ErrorKind::BadInput,
                "matrix column count mismatch");
        for (std::size_t c = 0; c < cols; ++c) {
            long v = row.at(c).get<long>();
            require(v >= 0 && v < f.cardinality, ErrorKind::BadInput,
                    "entry out of range for " + f.name());
            m(i, c) = static_cast<std::uint8_t>(v);
        }
    }
    return m;
}

inline Json module_to_json(const ModuleRep& m) {
    Json j;
    j["format_version"] = 1;
    j["algebra"] = algebra_to_json(m.algebra);
    j["field"] = m.algebra->field().name();
    j["dim"] = m.dim;
    Json action;
    for (const auto& g : m.algebra->generators())
        action[g.name] = matrix_to_json(m.action(g.name));
    action["t"] = matrix_to_json(m.t_action);
    j["action"] = std::move(action);
    if (!m.label.empty()) j["label"] = m.label;
    return j;
}

inline ModuleRep module_from_json(const Json& j) {
    require(j.contains("format_version") && j.at("format_version").get<int>() == 1,
            ErrorKind::BadInput, "unsupported module format version");
    AlgebraRef a = algebra_from_json(j.at("algebra"));
    if (j.contains("field"))
        require(Field::parse(j.at("field").get<std::string>()) == a->field(),
                ErrorKind::BadInput, "field does not match the algebra");
    ModuleRep m;
    m.algebra = a;
    m.dim = j.at("dim").get<std::size_t>();
    const Json& action = j.at("action");
    for (const auto& g : a->generators()) {
        require(action.contains(g.name), ErrorKind::BadInput, "missing action for " + g.name);
        m.nil_action.push_back(matrix_from_json(action.at(g.name), a->field(), m.dim, m.dim));
    }
    require(action.contains("t"), ErrorKind::BadInput, "missing action for t");
    m.t_action = matrix_from_json(action.at("t"), a->field(), m.dim, m.dim);
    if (j.contains("label")) m.label = j.at("label").get<std::string>();
    auto violations = module_violations(m);
    if (!violations.empty()) {
        std::string msg = "module file violates";
        for (const auto& v : violations) msg += " [" + v + "]";
        fail(ErrorKind::InvalidModule, msg);
    }
    return m;
}

inline Json subspace_to_json(const Subspace& s) {
    Json j;
    j["ambient"] = s.ambient_dim();
    j["dim"] = s.dim();
    j["basis"] = matrix_to_json(s.basis());
    return j;
}

inline Json certificate_to_json(const NoCohomologyCertificate& c) {
    Json j;
    if (!c.module_label.empty()) j["module"] = c.module_label;
    j["subgroup"] = c.subgroup;
    j["restriction_projective"] = c.restriction_projective;
    j["socle_free"] = c.socle_free;
    j["valid"] = c.valid();
    j["witness"] = {{"sigma_rank", c.sigma_rank},
                    {"expected_rank", c.expected_rank},
                    {"trivial_socle_dim", c.trivial_socle_dim}};
    return j;
}

inline Json tate_to_json(const TateTable& t) {
    Json j;
    j["module_id"] = t.module_label;
    j["range"] = {t.lo, t.hi};
    j["dims"] = t.dims;
    return j;
}

inline Json decomposition_to_json(const DecompositionReport& r) {
    Json j;
    Json summands;
    for (const auto& [name, mult] : r.multiplicity) {
        summands[name] = {{"multiplicity", mult}, {"dim", r.type_dim.at(name)}};
    }
    j["summands"] = std::move(summands);
    j["total_dim"] = r.total_dim();
    return j;
}

inline Json duality_to_json(const DualityReport& r) {
    Json j;
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"degree", e.degree},
                           {"forward", e.forward},
                           {"backward", e.backward},
                           {"pass", e.pass}});
    j["entries"] = std::move(entries);
    j["all_pass"] = r.all_pass;
    return j;
}

inline Json vec_to_json(const Vec& v) {
    Json j = Json::array();
    for (auto c : v) j.push_back(c);
    return j;
}

inline Json filtration_to_json(const FiltrationResult& r) {
    Json j;
    j["M1"] = subspace_to_json(r.M1);
    j["M2"] = subspace_to_json(r.M2);
    j["dims"] = {{"M1", r.dim_m1}, {"M_over_M2", r.dim_m_over_m2}, {"quotient", r.quotient.dim}};
    Json trace = Json::array();
    for (const auto& rec : r.trace) {
        Json t;
        t["d_before"] = rec.d_before;
        t["d_after"] = rec.d_after;
        t["branch"] = rec.branch;
        t["eigenvalue"] = rec.eigenvalue;
        t["chosen_m"] = vec_to_json(rec.chosen_m);
        if (!rec.witness_u.empty()) t["witness_u"] = vec_to_json(rec.witness_u);
        if (!rec.witness_m1.empty()) t["witness_m1"] = vec_to_json(rec.witness_m1);
        trace.push_back(std::move(t));
    }
    j["trace"] = std::move(trace);
    j["certificate"] = certificate_to_json(r.certificate);
    Json strips;
    for (const auto& [name, count] : r.stripped_projectives) strips[name] = count;
    j["stripped_projectives"] = std::move(strips);
    Json qp;
    for (const auto& [name, count] : r.quotient_projectives) qp[name] = count;
    j["quotient_projectives"] = std::move(qp);
    return j;
}

inline Json verification_to_json(const VerificationReport& r) {
    Json j;
    j["ok"] = r.ok();
    j["m1_invariant"] = r.m1_invariant;
    j["m2_invariant"] = r.m2_invariant;
    j["nested"] = r.nested;
    j["certificate_valid"] = r.certificate_valid;
    j["window_vanishes"] = r.window_vanishes;
    j["window"] = tate_to_json(r.window);
    j["dims"] = {{"M1", r.dim_m1}, {"M_over_M2", r.dim_m_over_m2}};
    return j;
}

/// Socle/radical/Loewy/measure report for the analyze command.
inline Json analyze_to_json(const ModuleRep& m) {
    Json j;
    j["algebra"] = algebra_to_json(m.algebra);
    if (!m.label.empty()) j["label"] = m.label;
    j["dim"] = m.dim;
    j["socle_dim"] = socle(m).dim();
    j["radical_dim"] = radical(m).dim();
    Json rs = Json::array();
    for (const auto& s : radical_series(m)) rs.push_back(s.dim());
    j["radical_series"] = std::move(rs);
    Json ss = Json::array();
    for (const auto& s : socle_series(m)) ss.push_back(s.dim());
    j["socle_series"] = std::move(ss);
    j["loewy_length"] = loewy_length(m);
    j["d_invariant"] = d_invariant(m);
    Json eig;
    for (auto& [chi, sp] : eigenspace_decomposition_t(m))
        eig[m.algebra->simple_name(chi)] = sp.dim();
    j["t_eigenspace_dims"] = std::move(eig);
    j["projective"] = is_projective(m);
    return j;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorKind::BadInput, "cannot open " + path + " for writing");
    out << text;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorKind::BadInput, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ModuleRep read_module_file(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::BadInput, std::string("json parse error: ") + e.what());
    }
    return module_from_json(j);
}

inline void write_module_file(const std::string& path, const ModuleRep& m) {
    write_text_file(path, dump_json(module_to_json(m)));
}

} // namespace stmodkit
