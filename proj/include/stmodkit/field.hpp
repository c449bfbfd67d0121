#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stmodkit/errors.hpp"

namespace stmodkit {

/// One of the three coefficient fields F2, F3, F4.
///
/// F4 = {0, 1, w, wbar} is fixed by its multiplication table (there is only
/// one field with four elements); the encoding is 0->0, 1->1, w->2, wbar->3
/// with w*w = wbar and w*wbar = 1. That encoding is what appears in every
/// file format, so field elements serialize as their integer codes.
struct Field {
    std::uint8_t characteristic = 0;
    std::uint8_t cardinality = 0;

    static constexpr Field f2() { return Field{2, 2}; }
    static constexpr Field f3() { return Field{3, 3}; }
    static constexpr Field f4() { return Field{2, 4}; }

    bool operator==(const Field&) const = default;

    std::string name() const {
        switch (cardinality) {
            case 2: return "F2";
            case 3: return "F3";
            case 4: return "F4";
        }
        return "F?";
    }

    static Field parse(const std::string& s) {
        if (s == "F2") return f2();
        if (s == "F3") return f3();
        if (s == "F4") return f4();
        fail(ErrorKind::BadField, "unknown field name '" + s + "'");
    }

    std::uint8_t add(std::uint8_t a, std::uint8_t b) const {
        switch (cardinality) {
            case 2: return a ^ b;
            case 3: {
                std::uint8_t s = static_cast<std::uint8_t>(a + b);
                return s >= 3 ? static_cast<std::uint8_t>(s - 3) : s;
            }
            default: return a ^ b; // F4 addition is xor in the {1, w} bit basis
        }
    }

    std::uint8_t neg(std::uint8_t a) const {
        if (characteristic == 2) return a;
        return a == 0 ? 0 : static_cast<std::uint8_t>(3 - a);
    }

    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add(a, neg(b)); }

    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
        switch (cardinality) {
            case 2: return a & b;
            case 3: return static_cast<std::uint8_t>((a * b) % 3);
            default: {
                if (a == 0 || b == 0) return 0;
                // nonzero elements are the cyclic group <w>: 1=w^0, 2=w^1, 3=w^2
                static constexpr std::array<std::uint8_t, 4> log = {0, 0, 1, 2};
                static constexpr std::array<std::uint8_t, 3> exp = {1, 2, 3};
                return exp[(log[a] + log[b]) % 3];
            }
        }
    }

    std::uint8_t inv(std::uint8_t a) const {
        require(a != 0, ErrorKind::DivisionByZero, "inverse of zero in " + name());
        switch (cardinality) {
            case 2: return 1;
            case 3: return a; // 1*1 = 2*2 = 1
            default: {
                static constexpr std::array<std::uint8_t, 4> table = {0, 1, 3, 2};
                return table[a];
            }
        }
    }

    std::uint8_t div(std::uint8_t a, std::uint8_t b) const { return mul(a, inv(b)); }

    std::uint8_t pow(std::uint8_t a, long e) const {
        if (e < 0) return pow(inv(a), -e);
        std::uint8_t r = 1, base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    /// Code of the integer n in the prime subfield.
    std::uint8_t from_int(long n) const {
        long p = characteristic;
        long m = ((n % p) + p) % p;
        return static_cast<std::uint8_t>(m);
    }
};

struct FieldElement {
    Field field;
    std::uint8_t code = 0;

    bool operator==(const FieldElement&) const = default;
};

inline void require_same_field(const FieldElement& a, const FieldElement& b) {
    require(a.field == b.field, ErrorKind::MixedFields,
            "operands live in " + a.field.name() + " and " + b.field.name());
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.field, a.field.add(a.code, b.code)};
}

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.field, a.field.mul(a.code, b.code)};
}

inline FieldElement operator-(const FieldElement& a) { return {a.field, a.field.neg(a.code)}; }

inline FieldElement inverse(const FieldElement& a) { return {a.field, a.field.inv(a.code)}; }

enum class FieldOp { add, mul, neg, inv };

/// Dispatch wrapper used by the CLI and by exhaustive axiom tests.
inline FieldElement field_ops(const FieldElement& a, const FieldElement& b, FieldOp which) {
    switch (which) {
        case FieldOp::add: return a + b;
        case FieldOp::mul: return a * b;
        case FieldOp::neg: return -a;
        case FieldOp::inv: return inverse(a);
    }
    fail(ErrorKind::BadInput, "unknown field op");
}

/// All elements, zero first and one second.
inline std::vector<FieldElement> all_elements(const Field& f) {
    std::vector<FieldElement> out;
    out.reserve(f.cardinality);
    for (std::uint8_t c = 0; c < f.cardinality; ++c) out.push_back({f, c});
    return out;
}

/// Swaps w and wbar in F4 (the nontrivial field automorphism); identity on
/// F2 and F3.
inline FieldElement conjugate(const FieldElement& a) {
    if (a.field.cardinality == 4 && a.code >= 2)
        return {a.field, static_cast<std::uint8_t>(a.code ^ 1)};
    return a;
}

} // namespace stmodkit
