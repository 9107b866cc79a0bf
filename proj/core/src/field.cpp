#include "lfpc/field.hpp"

#include <algorithm>
#include <sstream>

namespace lfpc {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomial helpers over GF(p); coefficients low degree first.
using Poly = std::vector<int>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly f, const Poly& g, int p) {
    trim(f);
    const int dg = static_cast<int>(g.size()) - 1;
    while (static_cast<int>(f.size()) - 1 >= dg && !f.empty()) {
        const int df = static_cast<int>(f.size()) - 1;
        // g is monic, so the quotient digit is just the leading coefficient.
        const int lead = f.back();
        for (int i = 0; i <= dg; ++i) {
            int& coef = f[df - dg + i];
            coef = (coef - lead * g[i]) % p;
            if (coef < 0) coef += p;
        }
        trim(f);
    }
    return f;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    trim(out);
    return out;
}

} // namespace

bool is_irreducible_mod_p(const std::vector<int>& poly, int p) {
    const int deg = static_cast<int>(poly.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    if (poly[0] == 0) return false; // divisible by x
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (int d = 1; 2 * d <= deg; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            Poly divisor(d + 1, 0);
            long rest = code;
            for (int i = 0; i < d; ++i) {
                divisor[i] = static_cast<int>(rest % p);
                rest /= p;
            }
            divisor[d] = 1;
            if (poly_mod(poly, divisor, p).empty()) return false;
        }
    }
    return true;
}

std::vector<int> smallest_irreducible(int p, int c) {
    if (c == 1) return {0, 1}; // placeholder: GF(p) needs no modulus
    long count = 1;
    for (int i = 0; i < c; ++i) count *= p;
    for (long code = 0; code < count; ++code) {
        Poly f(c + 1, 0);
        long rest = code;
        for (int i = 0; i < c; ++i) {
            f[i] = static_cast<int>(rest % p);
            rest /= p;
        }
        f[c] = 1;
        if (is_irreducible_mod_p(f, p)) return f;
    }
    throw Error("no irreducible polynomial found"); // unreachable for prime p
}

Field::Field(int p, int c) : Field(p, c, smallest_irreducible(p, c)) {}

Field::Field(int p, int c, const std::vector<int>& modulus)
    : p_(p), c_(c), modulus_(modulus) {
    if (!is_prime(p)) throw DomainError("field characteristic must be prime, got " + std::to_string(p));
    if (c < 1) throw DomainError("field extension degree must be positive");
    long q = 1;
    for (int i = 0; i < c; ++i) {
        q *= p;
        if (q > 256) throw DomainError("q = p^c exceeds the supported bound 256");
    }
    q_ = static_cast<int>(q);
    if (c == 1) {
        modulus_ = {0, 1};
    } else {
        if (static_cast<int>(modulus_.size()) != c + 1 || modulus_.back() != 1)
            throw DomainError("modulus must be monic of degree c");
        for (int& coef : modulus_) {
            coef %= p;
            if (coef < 0) coef += p;
        }
        if (!is_irreducible_mod_p(modulus_, p))
            throw DomainError("modulus is reducible over GF(p)");
    }
    build_tables();
}

void Field::build_tables() {
    add_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
    mul_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
    neg_table_.assign(q_, 0);
    trace_table_.assign(q_, 0);

    auto to_poly = [&](int n) {
        Poly f;
        while (n > 0) {
            f.push_back(n % p_);
            n /= p_;
        }
        return f;
    };
    auto from_poly = [&](const Poly& f) {
        int n = 0;
        for (std::size_t i = f.size(); i-- > 0;) n = n * p_ + f[i];
        return n;
    };

    for (int a = 0; a < q_; ++a) {
        const Poly fa = to_poly(a);
        for (int b = 0; b < q_; ++b) {
            const Poly fb = to_poly(b);
            Poly sum(std::max(fa.size(), fb.size()), 0);
            for (std::size_t i = 0; i < sum.size(); ++i) {
                int s = 0;
                if (i < fa.size()) s += fa[i];
                if (i < fb.size()) s += fb[i];
                sum[i] = s % p_;
            }
            trim(sum);
            add_table_[static_cast<std::size_t>(a) * q_ + b] =
                static_cast<std::uint16_t>(from_poly(sum));
            mul_table_[static_cast<std::size_t>(a) * q_ + b] =
                static_cast<std::uint16_t>(from_poly(poly_mod(poly_mul(fa, fb, p_), modulus_, p_)));
        }
    }
    for (int a = 0; a < q_; ++a) {
        Poly f = to_poly(a);
        for (int& coef : f) coef = (p_ - coef) % p_;
        trim(f);
        neg_table_[a] = static_cast<std::uint16_t>(from_poly(f));
    }
    for (int a = 0; a < q_; ++a) {
        // Tr(a) = a + a^p + ... + a^{p^{c-1}}, a prime-subfield element.
        int acc = 0;
        int pw = a;
        for (int i = 0; i < c_; ++i) {
            acc = add_table_[static_cast<std::size_t>(acc) * q_ + pw];
            int next = pw;
            for (int e = 1; e < p_; ++e)
                next = mul_table_[static_cast<std::size_t>(next) * q_ + pw];
            pw = next;
        }
        // acc lies in the prime subfield: its digit vector is (acc, 0, ..., 0).
        if (acc >= p_) throw Error("trace fell outside the prime subfield");
        trace_table_[a] = static_cast<std::uint8_t>(acc);
    }
}

void Field::check(GFqElem a) const {
    if (a.v >= q_) throw FieldMismatchError("element index " + std::to_string(a.v) +
                                            " does not belong to GF(" + std::to_string(q_) + ")");
}

GFqElem Field::elem(int index) const {
    if (index < 0 || index >= q_)
        throw DomainError("element index out of range [0, q)");
    return GFqElem{static_cast<std::uint16_t>(index)};
}

int Field::index(GFqElem a) const {
    check(a);
    return a.v;
}

std::vector<int> Field::digits(GFqElem a) const {
    check(a);
    std::vector<int> out(c_, 0);
    int n = a.v;
    for (int i = 0; i < c_; ++i) {
        out[i] = n % p_;
        n /= p_;
    }
    return out;
}

GFqElem Field::add(GFqElem a, GFqElem b) const {
    check(a);
    check(b);
    return GFqElem{add_table_[static_cast<std::size_t>(a.v) * q_ + b.v]};
}

GFqElem Field::sub(GFqElem a, GFqElem b) const { return add(a, neg(b)); }

GFqElem Field::neg(GFqElem a) const {
    check(a);
    return GFqElem{neg_table_[a.v]};
}

GFqElem Field::mul(GFqElem a, GFqElem b) const {
    check(a);
    check(b);
    return GFqElem{mul_table_[static_cast<std::size_t>(a.v) * q_ + b.v]};
}

int Field::trace(GFqElem a) const {
    check(a);
    return trace_table_[a.v];
}

std::string Field::to_string(GFqElem a) const {
    check(a);
    if (c_ == 1) return std::to_string(a.v);
    std::ostringstream os;
    os << '(';
    const auto d = digits(a);
    for (int i = 0; i < c_; ++i) {
        if (i) os << ',';
        os << d[i];
    }
    os << ')';
    return os.str();
}

} // namespace lfpc
