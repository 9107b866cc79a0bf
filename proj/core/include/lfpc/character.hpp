#pragma once

#include "lfpc/cyclotomic.hpp"
#include "lfpc/laurent.hpp"

namespace lfpc {

/// Value of the fixed additive character: the p-th root of unity
/// zeta_p^exponent. Exponents combine additively.
struct CharValue {
    int p = 2;
    int exponent = 0; // reduced mod p

    bool is_one() const { return exponent == 0; }
    CharValue operator*(const CharValue& other) const {
        if (p != other.p) throw FieldMismatchError("character values of different orders");
        return CharValue{p, (exponent + other.exponent) % p};
    }
    CharValue conj() const { return CharValue{p, (p - exponent) % p}; }
    bool operator==(const CharValue&) const = default;

    CycloNumber to_cyclo() const { return CycloNumber::zeta_pow(p, exponent); }
    Coeff to_coeff(int q) const { return Coeff::from_cyclo(q, to_cyclo()); }
};

/// The fixed character on the additive group: chi(x) = zeta_p^{Tr(c_{-1}(x))}
/// where c_{-1}(x) is the digit of x at exponent -1. Trivial on the ring of
/// integers, nontrivial one level up.
CharValue chi(const LaurentNumber& x);

/// chi_y(x) = chi(y x).
CharValue chi_y(const LaurentNumber& y, const LaurentNumber& x);

/// Level k at which xi -> chi_y(xi) is constant on cosets of P^k, namely
/// k = 1 - valuation(y). Throws DomainError for y = 0.
int char_level(const LaurentNumber& y);

} // namespace lfpc
