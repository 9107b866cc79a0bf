#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>

#include "lfpc/field.hpp"

namespace lfpc {

/// |x| as an exact power of q: the value is q^exp, or 0 when zero is set.
struct QPower {
    bool zero = false;
    int exp = 0;
    friend bool operator==(const QPower&, const QPower&) = default;
};

/// Element of K = GF(q)((t)) stored as a finite Laurent polynomial
/// sum c_l t^l with nonzero digits c_l in GF(q). The prime element is t
/// itself: t = prime(field). Zero has an empty term map.
///
/// Values are immutable in spirit: all operations return new values.
class LaurentNumber {
public:
    explicit LaurentNumber(const Field& field) : field_(field) {}

    static LaurentNumber zero(const Field& f) { return LaurentNumber(f); }
    static LaurentNumber one(const Field& f) { return term(f, f.one(), 0); }
    /// t^exp
    static LaurentNumber prime_power(const Field& f, int exp) {
        return term(f, f.one(), exp);
    }
    /// digit * t^exp
    static LaurentNumber term(const Field& f, GFqElem digit, int exp);

    const Field& field() const { return field_; }
    const std::map<int, GFqElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Digit at the given exponent (zero when absent).
    GFqElem digit_at(int exp) const;

    /// Minimum exponent; nullopt plays the role of +infinity for zero.
    std::optional<int> valuation() const;
    QPower abs() const;

    LaurentNumber operator+(const LaurentNumber& other) const;
    LaurentNumber operator-() const;
    LaurentNumber operator-(const LaurentNumber& other) const;
    LaurentNumber operator*(const LaurentNumber& other) const;

    /// The part supported on exponents <= -1; x - frac(x) has no negative
    /// exponents, so it lies in the ring of integers.
    LaurentNumber fractional_part() const;
    /// The part supported on exponents >= 0.
    LaurentNumber integer_part() const;
    /// Drops all digits at exponents >= level (canonical ball-center form).
    LaurentNumber reduced_mod_level(int level) const;
    /// Multiplication by t^j.
    LaurentNumber shifted(int j) const;

    bool operator==(const LaurentNumber& other) const;
    /// Deterministic total order used for canonical set representations.
    std::strong_ordering operator<=>(const LaurentNumber& other) const;

    /// DSL literal, e.g. "t^-2 + t^-1", "2*t^-1 + 1", "0".
    std::string to_string() const;

private:
    void set_digit(int exp, GFqElem digit);
    void require_same_field(const LaurentNumber& other) const;

    Field field_;
    std::map<int, GFqElem> terms_;
};

} // namespace lfpc
