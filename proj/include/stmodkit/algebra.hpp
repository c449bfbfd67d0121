#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stmodkit/field.hpp"
#include "stmodkit/matrix.hpp"

namespace stmodkit {

enum class AlgebraCase { A, B };

/// A nilpotent generator together with its commutation eigenvalue:
/// t * g = eta * g * t.
struct GeneratorInfo {
    std::string name;
    std::size_t nilpotency = 0;   // g^nilpotency = 0
    std::uint8_t t_eigenvalue = 1; // code of eta in the coefficient field
};

class AlgebraPresentation;
using AlgebraRef = std::shared_ptr<const AlgebraPresentation>;

/// One of the two group-algebra presentations (or its distinguished
/// p'-complement subalgebra), stored by structure constants on the fixed
/// monomial basis { nilpotent monomial * t^e }.
///
/// Case A:  k<Z, Y, t | Z^{3^r} = Y^3 = 0, ZY = YZ, tZ = Zt, tY = -Yt>,
///          characteristic 3, t of order 2, dimension 2 * 3^(r+1).
/// Case B:  k[X, Y, Z]/(X^2, Y^2, Z^2) with t of order 3 acting by
///          tX = wXt, tY = wbar*Yt, tZ = Zt over F4, dimension 24.
///
/// The subalgebra drops Z in both cases (span of the remaining generators
/// and t), giving k-Sigma3 of dimension 6 resp. the 12-dimensional index-2
/// complement used for restrictions.
class AlgebraPresentation : public std::enable_shared_from_this<AlgebraPresentation> {
public:
    static AlgebraRef case_a(unsigned r, Field f = Field::f3()) {
        require(r >= 1, ErrorKind::BadInput, "case A needs r >= 1");
        require(f.characteristic == 3, ErrorKind::BadCharacteristic,
                "case A needs characteristic 3");
        std::size_t zr = 1;
        for (unsigned i = 0; i < r; ++i) zr *= 3;
        std::vector<GeneratorInfo> gens = {
            {"Z", zr, 1},
            {"Y", 3, f.neg(1)},
        };
        return AlgebraRef(new AlgebraPresentation(AlgebraCase::A, r, false, f, gens, 2));
    }

    static AlgebraRef case_b(Field f = Field::f4()) {
        require(f == Field::f4(), ErrorKind::BadField, "case B needs F4");
        std::vector<GeneratorInfo> gens = {
            {"X", 2, 2}, // w
            {"Y", 2, 3}, // wbar
            {"Z", 2, 1},
        };
        return AlgebraRef(new AlgebraPresentation(AlgebraCase::B, 0, false, f, gens, 3));
    }

    /// The distinguished subalgebra used for restrictions: case A drops Z
    /// (leaving <Y, t>), case B drops Z (leaving <X, Y, t>).
    AlgebraRef distinguished_subalgebra() const {
        require(!subalgebra_, ErrorKind::BadInput, "already a subalgebra presentation");
        std::vector<GeneratorInfo> gens;
        for (const auto& g : gens_)
            if (g.name != "Z") gens.push_back(g);
        return AlgebraRef(
            new AlgebraPresentation(case_, r_, true, field_, gens, t_order_));
    }

    AlgebraCase algebra_case() const { return case_; }
    unsigned r() const { return r_; }
    bool is_subalgebra() const { return subalgebra_; }
    const Field& field() const { return field_; }
    const std::vector<GeneratorInfo>& generators() const { return gens_; }
    std::size_t t_order() const { return t_order_; }

    std::size_t nil_count() const { return nil_count_; }
    std::size_t dim() const { return nil_count_ * t_order_; }

    bool operator==(const AlgebraPresentation& o) const {
        return case_ == o.case_ && r_ == o.r_ && subalgebra_ == o.subalgebra_ &&
               field_ == o.field_;
    }

    std::string name() const {
        std::string base = case_ == AlgebraCase::A
                               ? ("A(r=" + std::to_string(r_) + ")")
                               : "B";
        if (subalgebra_) base += case_ == AlgebraCase::A ? "/D" : "/A4";
        return base;
    }

    /// Names returned by the subalgebra marker: the generators of D resp. A
    /// together with t.
    std::vector<std::string> subalgebra_generator_names() const {
        std::vector<std::string> names;
        for (const auto& g : gens_)
            if (g.name != "Z") names.push_back(g.name);
        names.push_back("t");
        return names;
    }

    std::optional<std::size_t> generator_index(const std::string& name) const {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name) return i;
        return std::nullopt;
    }

    // --- monomial indexing -------------------------------------------------

    std::vector<std::size_t> nil_exponents(std::size_t nil_idx) const {
        std::vector<std::size_t> e(gens_.size());
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            e[g] = nil_idx % gens_[g].nilpotency;
            nil_idx /= gens_[g].nilpotency;
        }
        return e;
    }

    std::size_t nil_index(const std::vector<std::size_t>& exps) const {
        std::size_t idx = 0;
        for (std::size_t g = gens_.size(); g-- > 0;) idx = idx * gens_[g].nilpotency + exps[g];
        return idx;
    }

    std::size_t basis_index(std::size_t nil_idx, std::size_t t_pow) const {
        return t_pow * nil_count_ + nil_idx;
    }

    std::size_t nil_part(std::size_t basis_idx) const { return basis_idx % nil_count_; }
    std::size_t t_part(std::size_t basis_idx) const { return basis_idx / nil_count_; }

    /// Eigenvalue of the commutation action: t * w = eta(w) * w * t.
    std::uint8_t nil_eigenvalue(std::size_t nil_idx) const { return nil_eta_[nil_idx]; }

    /// Index of the nilpotent product w1*w2, or nullopt when an exponent
    /// overflows its nilpotency.
    std::optional<std::size_t> nil_product(std::size_t a, std::size_t b) const {
        std::size_t idx = 0;
        std::size_t ra = a, rb = b;
        for (std::size_t g = gens_.size(); g-- > 0;) {
            // peel mixed-radix digits from the high end
            std::size_t stride = strides_[g];
            std::size_t ea = ra / stride, eb = rb / stride;
            ra %= stride;
            rb %= stride;
            std::size_t e = ea + eb;
            if (e >= gens_[g].nilpotency) return std::nullopt;
            idx = idx * gens_[g].nilpotency + e;
        }
        // idx was accumulated high-to-low which matches nil_index's layout
        return idx;
    }

    struct BasisProduct {
        std::uint8_t coeff = 0;   // zero means the product vanished
        std::size_t index = 0;
    };

    /// (w1 t^a)(w2 t^b) = eta(w2)^a * (w1 w2) t^{(a+b) mod tau}.
    BasisProduct basis_product(std::size_t bi, std::size_t bj) const {
        std::size_t w1 = nil_part(bi), a = t_part(bi);
        std::size_t w2 = nil_part(bj), b = t_part(bj);
        auto w = nil_product(w1, w2);
        if (!w) return {0, 0};
        std::uint8_t coeff = field_.pow(nil_eta_[w2], static_cast<long>(a));
        return {coeff, basis_index(*w, (a + b) % t_order_)};
    }

    /// The socle monomial of the nilpotent (Sylow) part: every generator at
    /// top exponent. Multiplying by it detects free summands over the Sylow
    /// subalgebra.
    std::size_t sigma_nil_index() const {
        std::vector<std::size_t> e(gens_.size());
        for (std::size_t g = 0; g < gens_.size(); ++g) e[g] = gens_[g].nilpotency - 1;
        return nil_index(e);
    }

    // --- simple-module bookkeeping ------------------------------------------

    /// Eigenvalue codes of t on the simple modules, 1 first.
    std::vector<std::uint8_t> simple_eigenvalues() const {
        std::vector<std::uint8_t> out = {1};
        if (t_order_ == 2) {
            out.push_back(field_.neg(1));
        } else {
            out.push_back(2);
            out.push_back(3);
        }
        return out;
    }

    std::string simple_name(std::uint8_t chi) const {
        if (chi == 1) return "k";
        if (case_ == AlgebraCase::A) return "eps";
        return chi == 2 ? "omega" : "omegabar";
    }

    std::optional<std::uint8_t> simple_eigenvalue_of_name(const std::string& s) const {
        for (auto chi : simple_eigenvalues())
            if (simple_name(chi) == s) return chi;
        return std::nullopt;
    }

    std::uint8_t inverse_tau() const { return field_.inv(field_.from_int(static_cast<long>(t_order_))); }

    /// Label of the relation list, used for check_module diagnostics.
    std::vector<std::string> relation_labels() const {
        std::vector<std::string> out;
        for (const auto& g : gens_)
            out.push_back(g.name + "^" + std::to_string(g.nilpotency) + "=0");
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = i + 1; j < gens_.size(); ++j)
                out.push_back(gens_[i].name + gens_[j].name + "=" + gens_[j].name + gens_[i].name);
        for (const auto& g : gens_) out.push_back("t" + g.name + "=" + eta_str(g) + g.name + "t");
        out.push_back("t^" + std::to_string(t_order_) + "=1");
        return out;
    }

    std::string monomial_word(std::size_t basis_idx) const {
        auto e = nil_exponents(nil_part(basis_idx));
        std::size_t tp = t_part(basis_idx);
        std::string s;
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            for (std::size_t i = 0; i < e[g]; ++i) s += gens_[g].name;
        }
        for (std::size_t i = 0; i < tp; ++i) s += "t";
        return s.empty() ? "1" : s;
    }

private:
    AlgebraPresentation(AlgebraCase c, unsigned r, bool sub, Field f,
                        std::vector<GeneratorInfo> gens, std::size_t t_order)
        : case_(c), r_(r), subalgebra_(sub), field_(f), gens_(std::move(gens)),
          t_order_(t_order) {
        nil_count_ = 1;
        strides_.resize(gens_.size());
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            strides_[g] = nil_count_;
            nil_count_ *= gens_[g].nilpotency;
        }
        nil_eta_.resize(nil_count_);
        for (std::size_t w = 0; w < nil_count_; ++w) {
            auto e = nil_exponents(w);
            std::uint8_t eta = 1;
            for (std::size_t g = 0; g < gens_.size(); ++g)
                eta = field_.mul(eta, field_.pow(gens_[g].t_eigenvalue, static_cast<long>(e[g])));
            nil_eta_[w] = eta;
        }
    }

    std::string eta_str(const GeneratorInfo& g) const {
        if (g.t_eigenvalue == 1) return "";
        if (case_ == AlgebraCase::A) return "-";
        return g.t_eigenvalue == 2 ? "w" : "wbar";
    }

    AlgebraCase case_;
    unsigned r_;
    bool subalgebra_;
    Field field_;
    std::vector<GeneratorInfo> gens_;
    std::size_t t_order_;
    std::size_t nil_count_ = 1;
    std::vector<std::size_t> strides_;
    std::vector<std::uint8_t> nil_eta_;
};

inline void require_same_algebra(const AlgebraRef& a, const AlgebraRef& b) {
    require(a && b && *a == *b, ErrorKind::AlgebraMismatch, "modules over different algebras");
}

/// Element of the algebra as a coefficient vector over the monomial basis.
struct AlgebraElement {
    AlgebraRef algebra;
    Vec coeffs; // length algebra->dim()

    static AlgebraElement zero(const AlgebraRef& a) {
        return {a, Vec(a->dim(), 0)};
    }

    static AlgebraElement basis(const AlgebraRef& a, std::size_t idx, std::uint8_t c = 1) {
        AlgebraElement e = zero(a);
        e.coeffs[idx] = c;
        return e;
    }

    static AlgebraElement one(const AlgebraRef& a) { return basis(a, a->basis_index(0, 0)); }

    static AlgebraElement generator(const AlgebraRef& a, const std::string& name) {
        if (name == "t") return basis(a, a->basis_index(0, 1));
        auto gi = a->generator_index(name);
        require(gi.has_value(), ErrorKind::BadInput, "no generator named " + name);
        std::vector<std::size_t> e(a->generators().size(), 0);
        e[*gi] = 1;
        return basis(a, a->basis_index(a->nil_index(e), 0));
    }

    AlgebraElement operator+(const AlgebraElement& o) const {
        require_same_algebra(algebra, o.algebra);
        AlgebraElement r = *this;
        const Field& f = algebra->field();
        for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] = f.add(coeffs[i], o.coeffs[i]);
        return r;
    }

    AlgebraElement operator*(const AlgebraElement& o) const {
        require_same_algebra(algebra, o.algebra);
        AlgebraElement r = zero(algebra);
        const Field& f = algebra->field();
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (!coeffs[i]) continue;
            for (std::size_t j = 0; j < o.coeffs.size(); ++j) {
                if (!o.coeffs[j]) continue;
                auto p = algebra->basis_product(i, j);
                if (!p.coeff) continue;
                std::uint8_t c = f.mul(f.mul(coeffs[i], o.coeffs[j]), p.coeff);
                r.coeffs[p.index] = f.add(r.coeffs[p.index], c);
            }
        }
        return r;
    }

    AlgebraElement scaled(std::uint8_t c) const {
        AlgebraElement r = *this;
        const Field& f = algebra->field();
        for (auto& x : r.coeffs) x = f.mul(x, c);
        return r;
    }

    bool is_zero() const {
        for (auto c : coeffs)
            if (c) return false;
        return true;
    }

    bool operator==(const AlgebraElement& o) const {
        return *algebra == *o.algebra && coeffs == o.coeffs;
    }

    /// The t-commutation eigenvalue when the element is homogeneous for it
    /// (all monomials share one eta); nullopt otherwise or for zero.
    std::optional<std::uint8_t> homogeneous_eigenvalue() const {
        std::optional<std::uint8_t> eta;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (!coeffs[i]) continue;
            std::uint8_t e = algebra->nil_eigenvalue(algebra->nil_part(i));
            if (eta && *eta != e) return std::nullopt;
            eta = e;
        }
        return eta;
    }
};

/// The idempotent projecting onto the chi-eigenspace of t:
/// e_chi = (1/tau) * sum_a chi^{-a} t^a.
inline AlgebraElement t_idempotent(const AlgebraRef& a, std::uint8_t chi) {
    AlgebraElement e = AlgebraElement::zero(a);
    const Field& f = a->field();
    std::uint8_t inv_tau = a->inverse_tau();
    for (std::size_t p = 0; p < a->t_order(); ++p) {
        std::uint8_t c = f.mul(inv_tau, f.pow(f.inv(chi), static_cast<long>(p)));
        e.coeffs[a->basis_index(0, p)] = c;
    }
    return e;
}

/// sigma = product of every nilpotent generator at top exponent, spanning the
/// socle of the Sylow subalgebra.
inline AlgebraElement sigma_element(const AlgebraRef& a) {
    return AlgebraElement::basis(a, a->basis_index(a->sigma_nil_index(), 0));
}

} // namespace stmodkit
