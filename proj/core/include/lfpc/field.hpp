#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "lfpc/errors.hpp"

namespace lfpc {

/// Element of the residue field GF(q). The stored value is the digit index
/// n in [0, q): writing n = sum a_k p^k, the element has coordinates
/// (a_0, ..., a_{c-1}) in the power basis of the modulus quotient.
struct GFqElem {
    std::uint16_t v = 0;
    friend constexpr auto operator<=>(const GFqElem&, const GFqElem&) = default;
};

/// The residue field GF(q), q = p^c, together with the monic irreducible
/// modulus that fixes the power-basis digit encoding. All arithmetic is
/// table-driven and exact; construction validates primality of p and
/// irreducibility of the modulus. Supported range: q <= 256.
///
/// Instances are immutable after construction and freely shareable.
class Field {
public:
    /// Uses the lexicographically smallest monic irreducible modulus of
    /// degree c over GF(p) (coefficient tuples compared low degree first).
    Field(int p, int c);

    /// modulus lists all c+1 coefficients, low degree first; the leading
    /// coefficient must be 1. For c = 1 the modulus is ignored.
    Field(int p, int c, const std::vector<int>& modulus);

    int p() const { return p_; }
    int c() const { return c_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    bool operator==(const Field& other) const {
        return p_ == other.p_ && c_ == other.c_ && modulus_ == other.modulus_;
    }

    GFqElem zero() const { return GFqElem{0}; }
    GFqElem one() const { return GFqElem{1}; }

    /// Digit encoding n <-> sum a_k eps_k, n = sum a_k p^k.
    GFqElem elem(int index) const;
    int index(GFqElem a) const;
    /// Base-p coordinates (a_0, ..., a_{c-1}) of an element.
    std::vector<int> digits(GFqElem a) const;

    GFqElem add(GFqElem a, GFqElem b) const;
    GFqElem sub(GFqElem a, GFqElem b) const;
    GFqElem neg(GFqElem a) const;
    GFqElem mul(GFqElem a, GFqElem b) const;

    /// Trace to the prime subfield, Tr(a) = a + a^p + ... + a^{p^{c-1}},
    /// returned as an integer in [0, p).
    int trace(GFqElem a) const;

    /// Renders an element for diagnostics, e.g. "3" or "(1,0,1)".
    std::string to_string(GFqElem a) const;

private:
    void build_tables();
    void check(GFqElem a) const;

    int p_ = 0;
    int c_ = 0;
    int q_ = 0;
    std::vector<int> modulus_; // length c+1, low degree first, monic
    std::vector<std::uint16_t> add_table_;
    std::vector<std::uint16_t> mul_table_;
    std::vector<std::uint16_t> neg_table_;
    std::vector<std::uint8_t> trace_table_;
};

/// True if the monic polynomial (low degree first, leading 1) is irreducible
/// over GF(p), decided by trial division against every monic polynomial of
/// degree at most deg/2.
bool is_irreducible_mod_p(const std::vector<int>& poly, int p);

/// The default modulus used by Field(p, c).
std::vector<int> smallest_irreducible(int p, int c);

} // namespace lfpc
