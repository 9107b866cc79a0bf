#include "lfpc/character.hpp"

namespace lfpc {

CharValue chi(const LaurentNumber& x) {
    const Field& f = x.field();
    return CharValue{f.p(), f.trace(x.digit_at(-1))};
}

CharValue chi_y(const LaurentNumber& y, const LaurentNumber& x) {
    return chi(y * x);
}

int char_level(const LaurentNumber& y) {
    const auto v = y.valuation();
    if (!v) throw DomainError("char_level of the zero frequency (constant character)");
    return 1 - *v;
}

} // namespace lfpc
