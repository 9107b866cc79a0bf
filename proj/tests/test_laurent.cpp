#include <doctest.h>

#include "testutil.hpp"

#include "lfpc/laurent.hpp"
#include "lfpc/translation.hpp"

using namespace lfpc;
using test::Rng;

namespace {
QPower abs_max(const QPower& a, const QPower& b) {
    if (a.zero) return b;
    if (b.zero) return a;
    return QPower{false, std::max(a.exp, b.exp)};
}
bool abs_le(const QPower& a, const QPower& b) {
    if (a.zero) return true;
    if (b.zero) return false;
    return a.exp <= b.exp;
}
} // namespace

TEST_CASE("addition examples") {
    Field f2(2, 1);
    const auto tinv = LaurentNumber::prime_power(f2, -1);
    CHECK((tinv + tinv).is_zero());
    const auto x = LaurentNumber::prime_power(f2, -2) + tinv;
    CHECK(x + tinv == LaurentNumber::prime_power(f2, -2));
}

TEST_CASE("ultrametric inequality on random pairs") {
    for (int qi : {2, 3, 4}) {
        Field f = qi == 4 ? Field(2, 2) : Field(qi, 1);
        Rng rng(1000 + qi);
        for (int trial = 0; trial < 1000; ++trial) {
            const auto x = test::random_laurent(rng, f, -3, 3);
            const auto y = test::random_laurent(rng, f, -3, 3);
            CHECK(abs_le((x + y).abs(), abs_max(x.abs(), y.abs())));
            // equality when the absolute values differ
            if (!x.abs().zero && !y.abs().zero && x.abs().exp != y.abs().exp)
                CHECK((x + y).abs() == abs_max(x.abs(), y.abs()));
        }
    }
}

TEST_CASE("multiplication examples") {
    Field f2(2, 1);
    CHECK(LaurentNumber::prime_power(f2, 1) * LaurentNumber::prime_power(f2, -1) ==
          LaurentNumber::one(f2));
    const auto one_plus_t = LaurentNumber::one(f2) + LaurentNumber::prime_power(f2, 1);
    CHECK(one_plus_t * one_plus_t ==
          LaurentNumber::one(f2) + LaurentNumber::prime_power(f2, 2));
}

TEST_CASE("absolute value is multiplicative on random pairs") {
    for (int qi : {2, 3, 5}) {
        Field f(qi, 1);
        Rng rng(2000 + qi);
        for (int trial = 0; trial < 1000; ++trial) {
            const auto x = test::random_laurent(rng, f, -3, 3);
            const auto y = test::random_laurent(rng, f, -3, 3);
            const QPower px = x.abs(), py = y.abs(), pxy = (x * y).abs();
            if (px.zero || py.zero)
                CHECK(pxy.zero);
            else
                CHECK(pxy == QPower{false, px.exp + py.exp});
        }
    }
}

TEST_CASE("valuation and absolute value") {
    Field f3(3, 1);
    CHECK(!LaurentNumber::zero(f3).valuation().has_value());
    CHECK(LaurentNumber::zero(f3).abs() == QPower{true, 0});
    const auto x = LaurentNumber::prime_power(f3, -2) + LaurentNumber::one(f3);
    CHECK(x.valuation() == -2);
    CHECK(x.abs() == QPower{false, 2});
    CHECK(LaurentNumber::prime_power(f3, 3).valuation() == 3);
    CHECK(LaurentNumber::prime_power(f3, 3).abs() == QPower{false, -3});
}

TEST_CASE("fractional part") {
    Field f2(2, 1);
    const auto x = LaurentNumber::prime_power(f2, -1) + LaurentNumber::one(f2) +
                   LaurentNumber::prime_power(f2, 1);
    CHECK(x.fractional_part() == LaurentNumber::prime_power(f2, -1));
    CHECK(LaurentNumber::one(f2).fractional_part().is_zero());
    for (int qi : {2, 3, 5}) {
        Field f(qi, 1);
        const auto u5 = u_of_index(f, 5ULL);
        CHECK(u5.fractional_part() == u5);
    }
}

TEST_CASE("ring axioms on random triples") {
    for (int qi : {2, 3, 4, 5}) {
        Field f = qi == 4 ? Field(2, 2) : Field(qi, 1);
        Rng rng(3000 + qi);
        for (int trial = 0; trial < 500; ++trial) {
            const auto x = test::random_laurent(rng, f, -2, 2);
            const auto y = test::random_laurent(rng, f, -2, 2);
            const auto z = test::random_laurent(rng, f, -2, 2);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            // splitting into fractional and integer parts
            CHECK(x.fractional_part() + x.integer_part() == x);
            CHECK(x.integer_part().fractional_part().is_zero());
        }
    }
}

TEST_CASE("field mismatch is rejected") {
    Field f2(2, 1), f3(3, 1);
    CHECK_THROWS_AS(LaurentNumber::one(f2) + LaurentNumber::one(f3), FieldMismatchError);
}

TEST_CASE("string form is the DSL literal") {
    Field f3(3, 1);
    const auto x = LaurentNumber::term(f3, f3.elem(2), -1) + LaurentNumber::one(f3);
    CHECK(x.to_string() == "2*t^-1 + 1");
    CHECK(LaurentNumber::zero(f3).to_string() == "0");
    CHECK(LaurentNumber::prime_power(f3, -2).to_string() == "t^-2");
}
