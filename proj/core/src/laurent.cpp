#include "lfpc/laurent.hpp"

#include <sstream>

namespace lfpc {

LaurentNumber LaurentNumber::term(const Field& f, GFqElem digit, int exp) {
    LaurentNumber x(f);
    x.set_digit(exp, digit);
    return x;
}

void LaurentNumber::set_digit(int exp, GFqElem digit) {
    if (digit == field_.zero())
        terms_.erase(exp);
    else
        terms_[exp] = digit;
}

void LaurentNumber::require_same_field(const LaurentNumber& other) const {
    if (!(field_ == other.field_))
        throw FieldMismatchError("Laurent numbers belong to different fields");
}

GFqElem LaurentNumber::digit_at(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? field_.zero() : it->second;
}

std::optional<int> LaurentNumber::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

QPower LaurentNumber::abs() const {
    const auto v = valuation();
    if (!v) return QPower{true, 0};
    return QPower{false, -*v};
}

LaurentNumber LaurentNumber::operator+(const LaurentNumber& other) const {
    require_same_field(other);
    LaurentNumber out = *this;
    for (const auto& [exp, digit] : other.terms_)
        out.set_digit(exp, field_.add(out.digit_at(exp), digit));
    return out;
}

LaurentNumber LaurentNumber::operator-() const {
    LaurentNumber out(field_);
    for (const auto& [exp, digit] : terms_)
        out.terms_[exp] = field_.neg(digit); // nonzero stays nonzero
    return out;
}

LaurentNumber LaurentNumber::operator-(const LaurentNumber& other) const {
    return *this + (-other);
}

LaurentNumber LaurentNumber::operator*(const LaurentNumber& other) const {
    require_same_field(other);
    LaurentNumber out(field_);
    for (const auto& [ea, da] : terms_)
        for (const auto& [eb, db] : other.terms_) {
            const int exp = ea + eb;
            out.set_digit(exp, field_.add(out.digit_at(exp), field_.mul(da, db)));
        }
    return out;
}

LaurentNumber LaurentNumber::fractional_part() const {
    LaurentNumber out(field_);
    for (const auto& [exp, digit] : terms_)
        if (exp <= -1) out.terms_[exp] = digit;
    return out;
}

LaurentNumber LaurentNumber::integer_part() const {
    LaurentNumber out(field_);
    for (const auto& [exp, digit] : terms_)
        if (exp >= 0) out.terms_[exp] = digit;
    return out;
}

LaurentNumber LaurentNumber::reduced_mod_level(int level) const {
    LaurentNumber out(field_);
    for (const auto& [exp, digit] : terms_)
        if (exp < level) out.terms_[exp] = digit;
    return out;
}

LaurentNumber LaurentNumber::shifted(int j) const {
    LaurentNumber out(field_);
    for (const auto& [exp, digit] : terms_) out.terms_[exp + j] = digit;
    return out;
}

bool LaurentNumber::operator==(const LaurentNumber& other) const {
    return field_ == other.field_ && terms_ == other.terms_;
}

std::strong_ordering LaurentNumber::operator<=>(const LaurentNumber& other) const {
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    for (; a != terms_.end() && b != other.terms_.end(); ++a, ++b) {
        if (a->first != b->first) return a->first <=> b->first;
        if (a->second.v != b->second.v) return a->second.v <=> b->second.v;
    }
    if (a != terms_.end()) return std::strong_ordering::greater;
    if (b != other.terms_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

std::string LaurentNumber::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [exp, digit] : terms_) {
        if (!first) os << " + ";
        first = false;
        const int d = field_.index(digit);
        if (exp == 0) {
            os << d;
            continue;
        }
        if (d != 1) os << d << '*';
        os << "t^" << exp;
    }
    return os.str();
}

} // namespace lfpc
