#include "lfpc/cyclotomic.hpp"

#include <cmath>
#include <sstream>

namespace lfpc {

std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

double rational_to_double(const Rational& r) {
    return r.get_d();
}

CycloNumber::CycloNumber(int p) : p_(p), coords_(p - 1, Rational(0)) {
    if (p < 2) throw DomainError("cyclotomic order must be a prime >= 2");
}

CycloNumber CycloNumber::rational(int p, const Rational& r) {
    CycloNumber z(p);
    z.coords_[0] = r;
    return z;
}

CycloNumber CycloNumber::zeta_pow(int p, long k) {
    CycloNumber z(p);
    long r = k % p;
    if (r < 0) r += p;
    if (r < p - 1) {
        z.coords_[static_cast<std::size_t>(r)] = 1;
    } else {
        // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
        for (auto& coef : z.coords_) coef = -1;
    }
    return z;
}

void CycloNumber::require_same_p(const CycloNumber& other) const {
    if (p_ != other.p_)
        throw FieldMismatchError("cyclotomic values of different orders combined");
}

bool CycloNumber::is_zero() const {
    for (const auto& coef : coords_)
        if (coef != 0) return false;
    return true;
}

bool CycloNumber::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

Rational CycloNumber::rational_value() const {
    if (!is_rational())
        throw DiagnosticError("value is not rational: " + to_string());
    return coords_[0];
}

CycloNumber CycloNumber::operator+(const CycloNumber& other) const {
    require_same_p(other);
    CycloNumber out = *this;
    for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] += other.coords_[i];
    return out;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& other) {
    require_same_p(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

CycloNumber CycloNumber::operator-() const {
    CycloNumber out = *this;
    for (auto& coef : out.coords_) coef = -coef;
    return out;
}

CycloNumber CycloNumber::operator-(const CycloNumber& other) const {
    return *this + (-other);
}

CycloNumber CycloNumber::operator*(const CycloNumber& other) const {
    require_same_p(other);
    // Convolve exponents mod p, then eliminate zeta^{p-1}.
    std::vector<Rational> by_exp(p_, Rational(0));
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < coords_.size(); ++j) {
            if (other.coords_[j] == 0) continue;
            by_exp[(i + j) % p_] += coords_[i] * other.coords_[j];
        }
    }
    CycloNumber out(p_);
    for (int e = 0; e < p_ - 1; ++e) out.coords_[e] = by_exp[e] - by_exp[p_ - 1];
    return out;
}

CycloNumber CycloNumber::conj() const { return galois(p_ - 1); }

CycloNumber CycloNumber::galois(int k) const {
    if (k % p_ == 0) throw DomainError("Galois exponent divisible by p");
    std::vector<Rational> by_exp(p_, Rational(0));
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        long e = (static_cast<long>(i) * k) % p_;
        if (e < 0) e += p_;
        by_exp[static_cast<std::size_t>(e)] += coords_[i];
    }
    CycloNumber out(p_);
    for (int e = 0; e < p_ - 1; ++e) out.coords_[e] = by_exp[e] - by_exp[p_ - 1];
    return out;
}

CycloNumber CycloNumber::abs_sq() const { return *this * conj(); }

CycloNumber CycloNumber::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero cyclotomic value");
    // Product of the nontrivial Galois conjugates; z times it is the
    // rational field norm.
    CycloNumber prod = CycloNumber::one(p_);
    for (int k = 2; k < p_; ++k) prod = prod * galois(k);
    const Rational norm = (*this * prod).rational_value();
    if (norm == 0) throw Error("vanishing norm for a nonzero cyclotomic value");
    CycloNumber out = prod;
    const Rational inv = Rational(1) / norm;
    for (auto& coef : out.coords_) coef *= inv;
    return out;
}

bool CycloNumber::operator==(const CycloNumber& other) const {
    return p_ == other.p_ && coords_ == other.coords_;
}

std::string CycloNumber::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const Rational& coef = coords_[i];
        if (coef == 0) continue;
        Rational mag = coef;
        if (first) {
            if (coef < 0) {
                os << '-';
                mag = -coef;
            }
        } else {
            os << (coef < 0 ? " - " : " + ");
            if (coef < 0) mag = -coef;
        }
        first = false;
        if (i == 0) {
            os << rational_to_string(mag);
        } else {
            if (mag != 1) os << rational_to_string(mag) << '*';
            os << "zeta";
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

void CycloNumber::approx(double& re, double& im) const {
    re = 0.0;
    im = 0.0;
    const double tau = 6.283185307179586476925287;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const double c = rational_to_double(coords_[i]);
        re += c * std::cos(tau * static_cast<double>(i) / p_);
        im += c * std::sin(tau * static_cast<double>(i) / p_);
    }
}

std::optional<CycloNumber> sqrt_q_in_cyclo(int p, int c) {
    Rational even_part = 1;
    for (int i = 0; i + 1 < c; i += 2) even_part *= p;
    if (c % 2 == 0) return CycloNumber::rational(p, even_part);
    if (p % 4 != 1) return std::nullopt;
    // Quadratic Gauss sum: sum of legendre(k|p) * zeta^k squares to p when
    // p = 1 (mod 4).
    auto legendre = [p](int k) {
        long acc = 1, base = k % p;
        for (int e = (p - 1) / 2; e > 0; e >>= 1) {
            if (e & 1) acc = (acc * base) % p;
            base = (base * base) % p;
        }
        return acc == 1 ? 1 : -1;
    };
    CycloNumber gauss(p);
    for (int k = 1; k < p; ++k) {
        CycloNumber term = CycloNumber::zeta_pow(p, k);
        if (legendre(k) < 0) term = -term;
        gauss += term;
    }
    CycloNumber out = gauss * CycloNumber::rational(p, even_part);
    return out;
}

Coeff::Coeff(int p, int q) : q_(q), c_(0), base_(p), half_(p) {
    int t = q;
    while (t > 1) {
        if (t % p != 0) throw DomainError("q is not a power of p");
        t /= p;
        ++c_;
    }
    if (c_ == 0) throw DomainError("q must be at least p");
}

Coeff Coeff::from_cyclo(int q, const CycloNumber& a) {
    Coeff out(a.p(), q);
    out.base_ = a;
    return out;
}

Coeff Coeff::rational(int p, int q, const Rational& r) {
    return from_cyclo(q, CycloNumber::rational(p, r));
}

Coeff Coeff::half_power(int p, int q, int j) {
    Coeff out(p, q);
    // q^{floor(j/2)} as an exact rational (negative powers allowed).
    Rational whole = 1;
    const int floor_half = (j >= 0) ? j / 2 : -((-j + 1) / 2);
    for (int i = 0; i < std::abs(floor_half); ++i) whole *= q;
    if (floor_half < 0) whole = 1 / whole;
    if (j % 2 == 0) {
        out.base_ = CycloNumber::rational(p, whole);
        return out;
    }
    // Odd j = 2*floor_half + 1: q^{j/2} = q^{floor_half} * sqrt(q).
    out.half_ = CycloNumber::rational(p, whole);
    out.normalize();
    return out;
}

void Coeff::normalize() {
    if (half_.is_zero()) return;
    const auto root = sqrt_q_in_cyclo(base_.p(), c_);
    if (!root) return;
    base_ += half_ * *root;
    half_ = CycloNumber(base_.p());
}

void Coeff::require_compatible(const Coeff& other) const {
    if (q_ != other.q_ || base_.p() != other.base_.p())
        throw FieldMismatchError("coefficients from different fields combined");
}

Rational Coeff::rational_value() const {
    if (!half_.is_zero())
        throw DiagnosticError("value has a sqrt(q) part: " + to_string());
    return base_.rational_value();
}

Coeff Coeff::operator+(const Coeff& other) const {
    require_compatible(other);
    Coeff out = *this;
    out.base_ += other.base_;
    out.half_ += other.half_;
    return out;
}

Coeff& Coeff::operator+=(const Coeff& other) {
    require_compatible(other);
    base_ += other.base_;
    half_ += other.half_;
    return *this;
}

Coeff Coeff::operator-() const {
    Coeff out = *this;
    out.base_ = -out.base_;
    out.half_ = -out.half_;
    return out;
}

Coeff Coeff::operator-(const Coeff& other) const { return *this + (-other); }

Coeff Coeff::operator*(const Coeff& other) const {
    require_compatible(other);
    Coeff out(base_.p(), q_);
    if (half_.is_zero() && other.half_.is_zero()) {
        out.base_ = base_ * other.base_;
        return out;
    }
    const CycloNumber qq = CycloNumber::integer(base_.p(), q_);
    out.base_ = base_ * other.base_ + qq * (half_ * other.half_);
    out.half_ = base_ * other.half_ + half_ * other.base_;
    return out;
}

Coeff Coeff::conj() const {
    Coeff out = *this;
    out.base_ = base_.conj();
    out.half_ = half_.conj(); // sqrt(q) is real
    return out;
}

Coeff Coeff::abs_sq() const { return *this * conj(); }

Coeff Coeff::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero coefficient");
    if (half_.is_zero()) {
        Coeff out = *this;
        out.base_ = base_.inverse();
        return out;
    }
    // (a + b s)^{-1} = (a - b s) / (a^2 - q b^2); the denominator is nonzero
    // because sqrt(q) is not in Q(zeta_p) whenever the half part survives
    // normalization.
    const CycloNumber qq = CycloNumber::integer(base_.p(), q_);
    const CycloNumber den = base_ * base_ - qq * (half_ * half_);
    const CycloNumber dinv = den.inverse();
    Coeff out(base_.p(), q_);
    out.base_ = base_ * dinv;
    out.half_ = -(half_ * dinv);
    return out;
}

bool Coeff::operator==(const Coeff& other) const {
    return q_ == other.q_ && base_ == other.base_ && half_ == other.half_;
}

std::string Coeff::to_string() const {
    if (half_.is_zero()) return base_.to_string();
    std::ostringstream os;
    if (!base_.is_zero()) os << base_.to_string() << " + ";
    os << '(' << half_.to_string() << ")*sqrt(" << q_ << ')';
    return os.str();
}

void Coeff::approx(double& re, double& im) const {
    double br, bi, hr, hi;
    base_.approx(br, bi);
    half_.approx(hr, hi);
    const double s = std::sqrt(static_cast<double>(q_));
    re = br + s * hr;
    im = bi + s * hi;
}

} // namespace lfpc
