#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lfpc/errors.hpp"

namespace lfpc {

using Rational = mpq_class;

std::string rational_to_string(const Rational& r);
double rational_to_double(const Rational& r);

/// Exact element of the cyclotomic field Q(zeta_p), coordinates in the
/// basis {1, zeta, ..., zeta^{p-2}} with zeta^{p-1} = -(1 + zeta + ... +
/// zeta^{p-2}). The representation is unique, so equality and zero tests
/// are coordinate comparisons.
class CycloNumber {
public:
    explicit CycloNumber(int p);
    static CycloNumber rational(int p, const Rational& r);
    static CycloNumber integer(int p, long n) { return rational(p, Rational(n)); }
    static CycloNumber one(int p) { return integer(p, 1); }
    /// zeta^k, k taken mod p.
    static CycloNumber zeta_pow(int p, long k);

    int p() const { return p_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const;
    bool is_real() const { return conj() == *this; }
    /// Throws DiagnosticError when the value is not rational.
    Rational rational_value() const;

    CycloNumber operator+(const CycloNumber& other) const;
    CycloNumber operator-() const;
    CycloNumber operator-(const CycloNumber& other) const;
    CycloNumber operator*(const CycloNumber& other) const;
    CycloNumber& operator+=(const CycloNumber& other);

    /// Complex conjugation, zeta -> zeta^{p-1}.
    CycloNumber conj() const;
    /// Galois action zeta -> zeta^k for k not divisible by p.
    CycloNumber galois(int k) const;
    /// z * conj(z); always real.
    CycloNumber abs_sq() const;
    /// Exact inverse via the product of Galois conjugates; throws
    /// DomainError on zero.
    CycloNumber inverse() const;

    bool operator==(const CycloNumber& other) const;

    /// Deterministic exact rendering, e.g. "1", "-1/4", "1 - zeta",
    /// "2/3*zeta^2".
    std::string to_string() const;
    /// Numeric evaluation at zeta = exp(2*pi*i/p), for diagnostics only.
    void approx(double& re, double& im) const;

private:
    void require_same_p(const CycloNumber& other) const;

    int p_;
    std::vector<Rational> coords_; // length p-1
};

/// The exact square root of q = p^c inside Q(zeta_p) when it exists:
/// p^{c/2} for even c, and the quadratic Gauss sum times p^{(c-1)/2} for
/// odd c when p = 1 (mod 4). Returns nullopt otherwise (p = 2 or
/// p = 3 mod 4 with odd c), in which case sqrt(q) generates a genuine
/// quadratic extension.
std::optional<CycloNumber> sqrt_q_in_cyclo(int p, int c);

/// Coefficient ring for cell functions: values a + b*sqrt(q) with a, b in
/// Q(zeta_p). Whenever sqrt(q) already lies in Q(zeta_p) the b-part is
/// folded away on construction, keeping representations unique; otherwise
/// the pair (a, b) is itself unique and the ring is the quadratic field
/// extension. Either way equality and zero tests are exact.
class Coeff {
public:
    Coeff(int p, int q); // zero
    static Coeff from_cyclo(int q, const CycloNumber& a);
    static Coeff rational(int p, int q, const Rational& r);
    static Coeff integer(int p, int q, long n) { return rational(p, q, Rational(n)); }
    static Coeff one(int p, int q) { return integer(p, q, 1); }
    /// Exact q^{j/2}: rational for even j, q^{(j-1)/2} * sqrt(q) for odd j.
    static Coeff half_power(int p, int q, int j);

    int p() const { return base_.p(); }
    int q() const { return q_; }
    const CycloNumber& base() const { return base_; }
    const CycloNumber& half() const { return half_; }

    bool is_zero() const { return base_.is_zero() && half_.is_zero(); }
    bool is_real() const { return base_.is_real() && half_.is_real(); }
    bool is_rational() const { return half_.is_zero() && base_.is_rational(); }
    Rational rational_value() const;

    Coeff operator+(const Coeff& other) const;
    Coeff operator-() const;
    Coeff operator-(const Coeff& other) const;
    Coeff operator*(const Coeff& other) const;
    Coeff& operator+=(const Coeff& other);

    Coeff conj() const;
    Coeff abs_sq() const;
    Coeff inverse() const;

    bool operator==(const Coeff& other) const;

    std::string to_string() const;
    void approx(double& re, double& im) const;

private:
    void normalize();
    void require_compatible(const Coeff& other) const;

    int q_;
    int c_; // q = p^c
    CycloNumber base_;
    CycloNumber half_;
};

} // namespace lfpc
