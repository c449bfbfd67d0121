#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stmodkit/cohomology.hpp"
#include "stmodkit/fixtures.hpp"

namespace stmodkit {

/// Deterministic pseudo-random stream; the same seed always reproduces the
/// same module byte for byte.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    Vec vector(const Field& f, std::size_t n) {
        Vec v(n);
        for (auto& c : v) c = static_cast<std::uint8_t>(below(f.cardinality));
        return v;
    }

private:
    std::uint64_t state_;
};

struct RandomSpec {
    enum class Construction { submodule_of_free, quotient_of_free, extension };

    std::uint64_t seed = 0;
    Construction construction = Construction::submodule_of_free;
    std::size_t free_copies = 1;
    std::vector<std::string> pieces; // extension building blocks by fixture name
    std::size_t dim_bound = 40;

    static const char* construction_name(Construction c) {
        switch (c) {
            case Construction::submodule_of_free: return "submodule_of_free";
            case Construction::quotient_of_free: return "quotient_of_free";
            case Construction::extension: return "extension";
        }
        return "?";
    }
};

/// Extension of `top` by `bottom` along a cocycle: the pushout of the first
/// syzygy of `top` inside its cover. A zero cocycle gives the direct sum.
inline ModuleRep extension_module(const ModuleRep& bottom, const ModuleRep& top,
                                  SeededRng& rng) {
    CoverResult c = projective_cover(top);
    Subspace ker = nullspace(c.surjection);
    ModuleRep omega = syzygy_module(c.cover, ker);
    Subspace homs = hom_space(omega, bottom);
    Matrix psi(bottom.algebra->field(), bottom.dim, omega.dim);
    if (!homs.is_zero()) {
        // random combination of the hom basis
        const Field f = bottom.algebra->field();
        Vec flat(omega.dim * bottom.dim, 0);
        for (std::size_t i = 0; i < homs.dim(); ++i) {
            std::uint8_t coeff = static_cast<std::uint8_t>(rng.below(f.cardinality));
            if (!coeff) continue;
            for (std::size_t j = 0; j < flat.size(); ++j)
                flat[j] = f.add(flat[j], f.mul(coeff, homs.basis()(i, j)));
        }
        psi = hom_vector_to_matrix(omega, bottom, flat);
    }
    ModuleRep sum = direct_sum(bottom, c.cover.rep);
    // graph of (psi, -iota) over the syzygy
    std::vector<Vec> graph;
    const Field f = bottom.algebra->field();
    for (std::size_t i = 0; i < ker.dim(); ++i) {
        Vec x = ker.basis().row(i); // in cover coordinates
        Vec xo = omega.dim ? ker.coordinates(x) : Vec{};
        Vec g(sum.dim, 0);
        Vec px = psi.apply(xo);
        for (std::size_t j = 0; j < bottom.dim; ++j) g[j] = px[j];
        for (std::size_t j = 0; j < c.cover.dim(); ++j) g[bottom.dim + j] = f.neg(x[j]);
        graph.push_back(std::move(g));
    }
    Subspace gsub = Subspace::span_of(f, sum.dim, graph);
    ModuleRep e = quotient_module(sum, gsub);
    check_invariant(e.dim == bottom.dim + top.dim, "extension", "pushout dimension is off");
    return e;
}

/// Reproducible random module per the spec record. Free constructions work
/// over any presentation; extensions sample two pieces from the list.
inline ModuleRep random_module(const AlgebraRef& a, const RandomSpec& spec) {
    require(spec.dim_bound <= 64, ErrorKind::TooLarge, "dim bound capped at 64");
    SeededRng rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL);
    const Field f = a->field();
    ModuleRep out;
    switch (spec.construction) {
        case RandomSpec::Construction::submodule_of_free: {
            ModuleRep free = regular_module(a);
            for (std::size_t i = 1; i < spec.free_copies; ++i)
                free = direct_sum(free, regular_module(a));
            for (int attempt = 0; attempt < 64; ++attempt) {
                std::size_t count = 1 + rng.below(3);
                std::vector<Vec> seeds;
                for (std::size_t i = 0; i < count; ++i) seeds.push_back(rng.vector(f, free.dim));
                Subspace sub = submodule_generated(free, seeds);
                if (sub.dim() > 0 && sub.dim() <= spec.dim_bound) {
                    out = sub_module(free, sub);
                    break;
                }
                // shrink: act by sigma to land deep in the module
                Matrix sig = sigma_action(free);
                Vec deep = sig.apply(seeds[0]);
                Subspace small = submodule_generated(free, {deep});
                if (small.dim() > 0 && small.dim() <= spec.dim_bound) {
                    out = sub_module(free, small);
                    break;
                }
            }
            break;
        }
        case RandomSpec::Construction::quotient_of_free: {
            ModuleRep free = regular_module(a);
            for (std::size_t i = 1; i < spec.free_copies; ++i)
                free = direct_sum(free, regular_module(a));
            std::vector<Vec> seeds;
            Subspace sub = Subspace::zero(f, free.dim);
            while (free.dim - sub.dim() > spec.dim_bound) {
                seeds.push_back(rng.vector(f, free.dim));
                sub = submodule_generated(free, seeds);
            }
            if (free.dim == sub.dim()) {
                // degenerate draw; fall back to the quotient by the radical
                sub = radical(free);
            }
            out = quotient_module(free, sub);
            break;
        }
        case RandomSpec::Construction::extension: {
            require(!spec.pieces.empty(), ErrorKind::BadInput, "extension needs pieces");
            // two distinct pieces in random order when the list allows it
            std::size_t i = rng.below(spec.pieces.size());
            std::size_t j = spec.pieces.size() > 1
                                ? (i + 1 + rng.below(spec.pieces.size() - 1)) % spec.pieces.size()
                                : i;
            ModuleRep top = fixture_module(a, spec.pieces[i]);
            ModuleRep bottom = fixture_module(a, spec.pieces[j]);
            out = extension_module(bottom, top, rng);
            break;
        }
    }
    require(out.dim > 0, ErrorKind::BadInput, "random construction failed to produce a module");
    require_valid(out);
    out.label = std::string(RandomSpec::construction_name(spec.construction)) + "#" +
                std::to_string(spec.seed);
    return out;
}

} // namespace stmodkit
