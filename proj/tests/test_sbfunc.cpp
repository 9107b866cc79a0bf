#include <doctest.h>

#include "oracles.hpp"
#include "testutil.hpp"

#include "lfpc/sbfunc.hpp"

using namespace lfpc;
using test::Rng;

namespace {
std::vector<Field> fields() {
    return {Field(2, 1), Field(3, 1), Field(2, 2), Field(5, 1)};
}
Coeff cr(const Field& f, const Rational& r) { return Coeff::rational(f.p(), f.q(), r); }
} // namespace

TEST_CASE("pointwise arithmetic examples") {
    Field f2(2, 1);
    Rng rng(1200);
    const auto g = test::random_sbfunction(rng, f2);
    CHECK((g + g.scaled(-Coeff::one(2, 2))).is_zero());
    CHECK(SBFunction::indicator(ESet::ideal(f2, 0))
              .pointwise_mul(SBFunction::indicator(ESet::ideal(f2, 1))) ==
          SBFunction::indicator(ESet::ideal(f2, 1)));
    for (int trial = 0; trial < 50; ++trial) {
        const auto h = test::random_sbfunction(rng, f2, 4, true);
        CHECK(h.conj().conj() == h);
    }
}

TEST_CASE("inner product examples") {
    Field f2(2, 1);
    const auto indO = SBFunction::indicator(ESet::ideal(f2, 0));
    CHECK(sb_inner(indO, indO) == Coeff::one(2, 2));
    const auto coset = SBFunction::indicator(
        ESet::ideal(f2, 0).translated(LaurentNumber::prime_power(f2, -1)));
    CHECK(sb_inner(indO, coset).is_zero());
    CHECK(sb_norm_sq(SBFunction::indicator(ESet::annulus(f2, 1))) == cr(f2, Rational(1, 4)));
}

TEST_CASE("translation and dilation operators") {
    for (const Field& f : fields()) {
        Rng rng(1300 + f.q());
        const auto g = test::random_sbfunction(rng, f);
        CHECK(sb_translate(g, TransIndex()) == g);
        CHECK(sb_dilate(g, 0) == g);
        CHECK(sb_norm_sq(sb_dilate(SBFunction::indicator(ESet::ideal(f, 0)), 1)) ==
              Coeff::one(f.p(), f.q()));
        for (int trial = 0; trial < 20; ++trial) {
            const auto h = test::random_sbfunction(rng, f);
            const int j = test::rand_int(rng, 0, 3);
            const unsigned long long k = test::rand_int(rng, 0, 3);
            const TransIndex ti = TransIndex::from_integer(k, f.q());
            // T_k D^j = D^j T_{q^j k}
            CHECK(sb_translate(sb_dilate(h, j), ti) ==
                  sb_dilate(sb_translate(h, ti.scaled_by_q_pow(j)), j));
            // unitarity
            CHECK(sb_norm_sq(sb_translate(h, ti)) == sb_norm_sq(h));
            CHECK(sb_norm_sq(sb_dilate(h, test::rand_int(rng, -3, 3))) == sb_norm_sq(h));
        }
    }
}

TEST_CASE("fourier transform examples") {
    Field f2(2, 1);
    const auto indO = SBFunction::indicator(ESet::ideal(f2, 0));
    CHECK(sb_fourier(indO) == indO);
    CHECK(sb_fourier(SBFunction::indicator(ESet::ideal(f2, 1))) ==
          SBFunction::indicator(ESet::ideal(f2, -1)).scaled(cr(f2, Rational(1, 2))));
}

TEST_CASE("plancherel and inversion on random functions") {
    for (const Field& f : fields()) {
        Rng rng(1400 + f.q());
        const int trials = 200;
        for (int trial = 0; trial < trials; ++trial) {
            const auto g = test::random_sbfunction(rng, f, 4, true);
            const auto ft = sb_fourier(g);
            CHECK(sb_norm_sq(ft) == sb_norm_sq(g));
            CHECK(sb_inv_fourier(ft) == g);
        }
    }
}

TEST_CASE("fourier covariance of the affine operators") {
    for (const Field& f : fields()) {
        Rng rng(1500 + f.q());
        for (int trial = 0; trial < 10; ++trial) {
            const auto g = test::random_sbfunction(rng, f, 3);
            const auto ft = sb_fourier(g);
            for (int j = -3; j <= 3; ++j)
                for (unsigned long long k = 0; k <= 3; ++k) {
                    const TransIndex ti = TransIndex::from_integer(k, f.q());
                    CHECK(sb_fourier(sb_dilate(sb_translate(g, ti), j)) ==
                          sb_affine_fourier(ft, j, ti));
                }
        }
    }
}

TEST_CASE("inner products are preserved by the operators") {
    Field f3(3, 1);
    Rng rng(1600);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = test::random_sbfunction(rng, f3);
        const auto h = test::random_sbfunction(rng, f3);
        const TransIndex ti = TransIndex::from_integer(test::rand_int(rng, 0, 8), 3);
        const int j = test::rand_int(rng, -2, 2);
        CHECK(sb_inner(sb_translate(g, ti), sb_translate(h, ti)) == sb_inner(g, h));
        CHECK(sb_inner(sb_dilate(g, j), sb_dilate(h, j)) == sb_inner(g, h));
    }
}

TEST_CASE("modulus squared") {
    Field f3(3, 1);
    const ESet w = ESet::annulus(f3, 1);
    CHECK(sb_modulus_sq(SBFunction::indicator(w)) == StepFn::indicator(w));
    CHECK(sb_modulus_sq(SBFunction::indicator(w).scaled(
              Coeff::from_cyclo(3, CycloNumber::zeta_pow(3, 1)))) == StepFn::indicator(w));
    CHECK(sb_modulus_sq(SBFunction::indicator(w).scaled(cr(f3, Rational(1, 2)))) ==
          StepFn::indicator(w).scaled(cr(f3, Rational(1, 4))));
}

TEST_CASE("periodization examples") {
    Field f2(2, 1);
    const auto coset7 = SBFunction::indicator(
        ESet::ideal(f2, 0).translated(u_of_index(f2, 7ULL)));
    CHECK(sb_periodize(sb_modulus_sq(coset7)) == StepFn::indicator(ESet::ideal(f2, 0), true));
    CHECK(sb_periodize(sb_modulus_sq(SBFunction::indicator(ESet::annulus(f2, 1)))) ==
          StepFn::indicator(ESet::annulus(f2, 1), true));
}

TEST_CASE("periodization conserves mass") {
    for (int qi : {2, 3}) {
        Field f(qi, 1);
        Rng rng(1700 + qi);
        for (int trial = 0; trial < 200; ++trial) {
            const StepFn g = test::random_stepfn(rng, f);
            CHECK(sb_periodize(g).integral() == g.integral());
        }
    }
}

TEST_CASE("integrals") {
    Field f2(2, 1);
    const auto indO = SBFunction::indicator(ESet::ideal(f2, 0));
    for (unsigned long long n = 1; n < 8; ++n) {
        const auto character = indO.mul_char(u_of_index(f2, n), 1);
        CHECK(sb_integral_over(character, ESet::ideal(f2, 0)).is_zero());
    }
    CHECK(sb_integral_over(SBFunction::indicator(ESet::ideal(f2, 1)), ESet::ideal(f2, -5)) ==
          cr(f2, Rational(1, 2)));
    Rng rng(1800);
    for (int trial = 0; trial < 50; ++trial) {
        const ESet e = test::random_eset(rng, f2);
        CHECK(sb_integral_over(SBFunction::indicator(ESet::ideal(f2, -4)), e) ==
              cr(f2, e.measure()));
    }
}

TEST_CASE("integral periodicity") {
    Field f2(2, 1);
    CHECK(sb_is_integral_periodic(StepFn::indicator(ESet::ideal(f2, 0), true)));
    CHECK(!sb_is_integral_periodic(StepFn::indicator(ESet::ideal(f2, 1))));
    Rng rng(1900);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(sb_is_integral_periodic(sb_periodize(test::random_stepfn(rng, f2))));
}

TEST_CASE("weight via periodization agrees with the Gram matrix") {
    for (int qi : {2, 3}) {
        Field f(qi, 1);
        Rng rng(2000 + qi);
        for (int trial = 0; trial < 100; ++trial) {
            const auto phi_hat = test::random_sbfunction(rng, f, 3);
            const StepFn w = sb_periodize(sb_modulus_sq(phi_hat));
            for (unsigned long long k = 0; k < static_cast<unsigned long long>(f.q()) * f.q();
                 ++k) {
                // <T_k phi, phi> equals the k-th Fourier coefficient of the
                // folded weight
                const SBFunction w_fn = SBFunction::from_cells(f, w.cells());
                const auto lhs = test::gram_entry(phi_hat, phi_hat, k);
                const auto rhs =
                    sb_integral_over(w_fn.mul_char(u_of_index(f, k), -1), ESet::ideal(f, 0));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("value queries") {
    Field f2(2, 1);
    const auto g = SBFunction::indicator(ESet::ideal(f2, 1));
    CHECK(g.value_at(LaurentNumber::prime_power(f2, 2)) == Coeff::one(2, 2));
    CHECK(g.value_at(LaurentNumber::one(f2)).is_zero());
    CHECK(g.value_on(Ball::ideal(f2, 2)) == Coeff::one(2, 2));
    CHECK_THROWS_AS(g.value_on(Ball::ideal(f2, 0)), DomainError);
}
