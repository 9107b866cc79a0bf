#include "lfpc/translation.hpp"

#include <algorithm>

namespace lfpc {

TransIndex TransIndex::from_integer(unsigned long long n, int q) {
    TransIndex out;
    while (n > 0) {
        out.digits_.push_back(static_cast<std::uint16_t>(n % q));
        n /= q;
    }
    if (!out.digits_.empty()) out.q_ = q;
    return out;
}

TransIndex TransIndex::from_digits(std::vector<std::uint16_t> digits, int q) {
    for (auto d : digits)
        if (d >= q) throw DomainError("translation index digit out of range");
    while (!digits.empty() && digits.back() == 0) digits.pop_back();
    TransIndex out;
    out.digits_ = std::move(digits);
    if (!out.digits_.empty()) out.q_ = q;
    return out;
}

TransIndex TransIndex::from_decimal_string(const std::string& text, int q) {
    if (text.empty()) throw DomainError("empty translation index literal");
    // Repeatedly divide the decimal string by q, collecting remainders.
    std::vector<int> dec;
    for (char ch : text) {
        if (ch < '0' || ch > '9')
            throw DomainError("translation index literal is not a nonnegative integer");
        dec.push_back(ch - '0');
    }
    std::vector<std::uint16_t> digits;
    while (!(dec.size() == 1 && dec[0] == 0)) {
        std::vector<int> quot;
        int rem = 0;
        for (int d : dec) {
            const int cur = rem * 10 + d;
            const int qd = cur / q;
            rem = cur % q;
            if (!quot.empty() || qd != 0) quot.push_back(qd);
        }
        digits.push_back(static_cast<std::uint16_t>(rem));
        if (quot.empty()) quot.push_back(0);
        dec = std::move(quot);
    }
    return from_digits(std::move(digits), q);
}

TransIndex TransIndex::scaled_by_q_pow(int k) const {
    if (is_zero()) return TransIndex{};
    if (k < 0) throw DomainError("negative q-power shift of a translation index");
    TransIndex out = *this;
    out.digits_.insert(out.digits_.begin(), static_cast<std::size_t>(k), 0);
    return out;
}

unsigned long long TransIndex::to_integer() const {
    unsigned long long n = 0;
    for (std::size_t k = digits_.size(); k-- > 0;) {
        const unsigned long long next = n * q_ + digits_[k];
        if (q_ > 0 && next / q_ < n)
            throw DomainError("translation index does not fit a machine word");
        n = next;
    }
    return n;
}

std::string TransIndex::to_decimal_string() const {
    if (is_zero()) return "0";
    // Horner evaluation over decimal strings: n = ((d_s q + d_{s-1}) q + ...).
    std::vector<int> dec{0};
    auto mul_add = [&](int mul, int add) {
        int carry = add;
        for (std::size_t i = 0; i < dec.size(); ++i) {
            const int cur = dec[i] * mul + carry;
            dec[i] = cur % 10;
            carry = cur / 10;
        }
        while (carry > 0) {
            dec.push_back(carry % 10);
            carry /= 10;
        }
    };
    for (std::size_t k = digits_.size(); k-- > 0;) mul_add(q_, digits_[k]);
    std::string out;
    for (std::size_t i = dec.size(); i-- > 0;) out.push_back(static_cast<char>('0' + dec[i]));
    return out;
}

std::strong_ordering TransIndex::operator<=>(const TransIndex& other) const {
    if (digits_.size() != other.digits_.size())
        return digits_.size() <=> other.digits_.size();
    for (std::size_t i = digits_.size(); i-- > 0;)
        if (digits_[i] != other.digits_[i]) return digits_[i] <=> other.digits_[i];
    return std::strong_ordering::equal;
}

LaurentNumber u_of_index(const Field& f, const TransIndex& n) {
    if (!n.is_zero() && n.q() != f.q())
        throw FieldMismatchError("translation index digits are not base q");
    LaurentNumber out(f);
    for (std::size_t k = 0; k < n.digit_count(); ++k) {
        const auto d = n.digit(k);
        if (d == 0) continue;
        out = out + LaurentNumber::term(f, f.elem(d), -static_cast<int>(k) - 1);
    }
    return out;
}

LaurentNumber u_of_index(const Field& f, unsigned long long n) {
    return u_of_index(f, TransIndex::from_integer(n, f.q()));
}

TransIndex index_of_u(const LaurentNumber& x) {
    const Field& f = x.field();
    std::vector<std::uint16_t> digits;
    for (const auto& [exp, digit] : x.terms()) {
        if (exp >= 0)
            throw DomainError("value has a digit at exponent >= 0: not a lattice point");
        const std::size_t k = static_cast<std::size_t>(-exp) - 1;
        if (digits.size() <= k) digits.resize(k + 1, 0);
        digits[k] = static_cast<std::uint16_t>(f.index(digit));
    }
    return TransIndex::from_digits(std::move(digits), f.q());
}

TransIndex u_add(const Field& f, const TransIndex& m, const TransIndex& n) {
    return index_of_u(u_of_index(f, m) + u_of_index(f, n));
}

TransIndex u_neg(const Field& f, const TransIndex& n) {
    return index_of_u(-u_of_index(f, n));
}

} // namespace lfpc
