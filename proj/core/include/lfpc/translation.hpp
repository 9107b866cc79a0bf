#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "lfpc/laurent.hpp"

namespace lfpc {

/// Index into the translation lattice {u(n)}. Stored as base-q digits
/// (low digit first, no trailing zeros) so that indices beyond the machine
/// word range stay exact.
class TransIndex {
public:
    TransIndex() = default; // zero
    static TransIndex from_integer(unsigned long long n, int q);
    static TransIndex from_digits(std::vector<std::uint16_t> digits, int q);
    static TransIndex from_decimal_string(const std::string& text, int q);

    int q() const { return q_; }
    bool is_zero() const { return digits_.empty(); }
    std::size_t digit_count() const { return digits_.size(); }
    std::uint16_t digit(std::size_t k) const {
        return k < digits_.size() ? digits_[k] : 0;
    }
    const std::vector<std::uint16_t>& digits() const { return digits_; }

    /// Shifts by k base-q digits, i.e. multiplies the index by q^k.
    TransIndex scaled_by_q_pow(int k) const;

    unsigned long long to_integer() const; // throws DomainError on overflow
    std::string to_decimal_string() const;

    bool operator==(const TransIndex& other) const {
        return digits_ == other.digits_;
    }
    std::strong_ordering operator<=>(const TransIndex& other) const;

private:
    std::vector<std::uint16_t> digits_;
    int q_ = 0; // 0 until the index carries a digit (zero is field-agnostic)
};

/// The lattice point u(n): write n = sum b_k q^k, then
/// u(n) = sum elem(b_k) t^{-(k+1)}.
LaurentNumber u_of_index(const Field& f, const TransIndex& n);
LaurentNumber u_of_index(const Field& f, unsigned long long n);

/// Inverse enumeration; x must be supported on exponents <= -1.
TransIndex index_of_u(const LaurentNumber& x);

/// Index of u(m) + u(n). Total: the lattice is closed under addition.
TransIndex u_add(const Field& f, const TransIndex& m, const TransIndex& n);
/// Index of -u(n).
TransIndex u_neg(const Field& f, const TransIndex& n);

} // namespace lfpc
