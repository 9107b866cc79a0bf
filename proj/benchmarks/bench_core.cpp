#include <benchmark/benchmark.h>

#include <random>

#include "lfpc/waveletlab.hpp"

using namespace lfpc;

namespace {

SBFunction sample_function(const Field& f, std::mt19937_64& rng, int span) {
    std::uniform_int_distribution<int> level_dist(-span, span);
    std::uniform_int_distribution<int> digit_dist(0, f.q() - 1);
    std::vector<Cell> cells;
    ESet used = ESet::empty(f);
    for (int i = 0; i < 3; ++i) {
        const int level = level_dist(rng);
        LaurentNumber center(f);
        for (int e = -span; e < level; ++e) {
            const int d = digit_dist(rng);
            if (d) center = center + LaurentNumber::term(f, f.elem(d), e);
        }
        const Ball b(center, level);
        const ESet mine = ESet::from_balls(f, {b});
        if (!es_intersect(mine, used).is_empty()) continue;
        used = es_union(used, mine);
        cells.push_back(Cell{b, Coeff::integer(f.p(), f.q(), 1 + (i % 3))});
    }
    return SBFunction::from_cells(f, std::move(cells));
}

void BM_FourierRoundTrip(benchmark::State& state) {
    const Field f(static_cast<int>(state.range(0)), 1);
    std::mt19937_64 rng(42);
    const SBFunction g = sample_function(f, rng, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sb_inv_fourier(sb_fourier(g)));
    }
}
BENCHMARK(BM_FourierRoundTrip)->Arg(2)->Arg(3)->Arg(5);

void BM_ESetNormalize(benchmark::State& state) {
    const Field f(2, 1);
    const auto cells = ESet::ideal(f, 0).split_to_level(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ESet::from_balls(f, cells));
    }
}
BENCHMARK(BM_ESetNormalize)->Arg(4)->Arg(6)->Arg(8);

void BM_VerifyParsevalShannon(benchmark::State& state) {
    const Field f(static_cast<int>(state.range(0)), 1);
    const auto cand = shannon_multiwavelet(f);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_affine_parseval(cand));
    }
}
BENCHMARK(BM_VerifyParsevalShannon)->Arg(2)->Arg(3)->Arg(5);

void BM_NegativeDilates(benchmark::State& state) {
    const Field f(2, 1);
    const auto cand = annulus_parseval_wavelet(f, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(negative_dilates_multiplicity(cand));
    }
}
BENCHMARK(BM_NegativeDilates)->Arg(1)->Arg(3);

void BM_LatticeAdd(benchmark::State& state) {
    const Field f(3, 1);
    const TransIndex a = TransIndex::from_integer(1234567, 3);
    const TransIndex b = TransIndex::from_integer(7654321, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(u_add(f, a, b));
    }
}
BENCHMARK(BM_LatticeAdd);

} // namespace

BENCHMARK_MAIN();
