#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "stmodkit/module.hpp"

namespace stmodkit {

/// Node-and-edge picture of a module: nodes are eigen-adapted basis vectors
/// of the radical layers, edges are nonzero generator actions into the next
/// layer, labeled by the generator name.
struct LoewyDiagram {
    struct Node {
        std::size_t layer;
        std::size_t index; // within the layer
        std::string label; // simple-module name of the eigenvalue
        Vec vector;        // representative in module coordinates
    };
    struct Edge {
        std::size_t from, to; // node indices
        std::string generator;
    };
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::vector<std::size_t> layer_sizes;
};

namespace detail {

inline std::string display_simple_name(const AlgebraRef& a, std::uint8_t chi) {
    if (chi == 1) return "k";
    if (a->algebra_case() == AlgebraCase::A) return "ε";          // epsilon
    return chi == 2 ? "ω" : "ω̄";                        // omega / omega-bar
}

} // namespace detail

inline LoewyDiagram loewy_diagram(const ModuleRep& m) {
    LoewyDiagram d;
    if (m.dim == 0) return d;
    const Field f = m.algebra->field();
    auto series = radical_series(m); // full > rad > ... > 0
    std::size_t layers = series.size() - 1;
    d.layer_sizes.assign(layers, 0);
    // layer bases: eigen-adapted lifts of rad^i / rad^{i+1}
    for (std::size_t i = 0; i < layers; ++i) {
        ModuleRep layer_mod = sub_module(m, series[i]);
        std::vector<Vec> lower;
        for (std::size_t r = 0; r < series[i + 1].dim(); ++r)
            lower.push_back(series[i].coordinates(series[i + 1].basis().row(r)));
        QuotientData q = quotient_module_data(layer_mod,
                                              Subspace::span_of(f, layer_mod.dim, lower));
        auto eig = eigenspace_decomposition_t(q.rep);
        for (auto chi : m.algebra->simple_eigenvalues()) {
            const Subspace& e = eig.at(chi);
            for (std::size_t s = 0; s < e.dim(); ++s) {
                // lift through the layer back to module coordinates
                Vec in_layer = q.lift.transpose().apply(e.basis().row(s));
                Vec in_module(m.dim, 0);
                for (std::size_t r = 0; r < series[i].dim(); ++r) {
                    if (!in_layer[r]) continue;
                    const std::uint8_t* row = series[i].basis().row_ptr(r);
                    for (std::size_t c = 0; c < m.dim; ++c)
                        in_module[c] = f.add(in_module[c], f.mul(in_layer[r], row[c]));
                }
                d.nodes.push_back({i, d.layer_sizes[i]++,
                                   detail::display_simple_name(m.algebra, chi), in_module});
            }
        }
    }
    // edges: generator images expressed against the next layer
    std::vector<std::size_t> layer_start(layers + 1, 0);
    for (std::size_t i = 0; i < layers; ++i)
        layer_start[i + 1] = layer_start[i] + d.layer_sizes[i];
    for (std::size_t i = 0; i + 1 < layers; ++i) {
        // basis matrix of layer i+1 nodes together with rad^{i+2}
        std::vector<Vec> rows;
        for (std::size_t s = 0; s < d.layer_sizes[i + 1]; ++s)
            rows.push_back(d.nodes[layer_start[i + 1] + s].vector);
        std::size_t deep_start = rows.size();
        for (std::size_t r = 0; r < series[i + 2].dim(); ++r)
            rows.push_back(series[i + 2].basis().row(r));
        Matrix basis = Matrix::from_rows(f, rows);
        for (std::size_t s = 0; s < d.layer_sizes[i]; ++s) {
            const LoewyDiagram::Node& src = d.nodes[layer_start[i] + s];
            for (const auto& g : m.algebra->generators()) {
                Vec img = m.action(g.name).apply(src.vector);
                auto coords = solve(basis.transpose(), img);
                if (!coords) continue; // numerical impossibility; images live below
                for (std::size_t t2 = 0; t2 < deep_start; ++t2)
                    if ((*coords)[t2])
                        d.edges.push_back({layer_start[i] + s, layer_start[i + 1] + t2, g.name});
            }
        }
    }
    return d;
}

/// Deterministic DOT output, one rank per radical layer.
inline std::string diagram_to_dot(const LoewyDiagram& d, const std::string& title = "module") {
    std::ostringstream out;
    out << "digraph \"" << title << "\" {\n";
    out << "  rankdir=TB;\n  node [shape=plaintext];\n";
    std::vector<std::size_t> layer_start;
    {
        std::size_t acc = 0;
        for (std::size_t s : d.layer_sizes) {
            layer_start.push_back(acc);
            acc += s;
        }
    }
    for (std::size_t i = 0; i < d.layer_sizes.size(); ++i) {
        out << "  { rank=same;";
        for (std::size_t s = 0; s < d.layer_sizes[i]; ++s)
            out << " n" << i << "_" << s << " [label=\"" << d.nodes[layer_start[i] + s].label
                << "\"];";
        out << " }\n";
    }
    for (const auto& e : d.edges) {
        const auto& a = d.nodes[e.from];
        const auto& b = d.nodes[e.to];
        out << "  n" << a.layer << "_" << a.index << " -> n" << b.layer << "_" << b.index
            << " [label=\"" << e.generator << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

/// Plain-text picture: one row of labels per layer, then the labeled edges.
inline std::string diagram_to_ascii(const LoewyDiagram& d) {
    std::ostringstream out;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d.layer_sizes.size(); ++i) {
        out << "layer " << i << ":";
        for (std::size_t s = 0; s < d.layer_sizes[i]; ++s) out << " " << d.nodes[idx + s].label;
        out << "\n";
        idx += d.layer_sizes[i];
    }
    for (const auto& e : d.edges) {
        const auto& a = d.nodes[e.from];
        const auto& b = d.nodes[e.to];
        out << "(" << a.layer << "," << a.index << ") -" << e.generator << "-> (" << b.layer
            << "," << b.index << ")\n";
    }
    return out.str();
}

} // namespace stmodkit
