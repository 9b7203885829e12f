#include <benchmark/benchmark.h>

#include "polyagg/approx.hpp"
#include "polyagg/poly_engine.hpp"
#include "polyagg/rng.hpp"
#include "polyagg/spectral.hpp"

using namespace polyagg;

namespace {

void BM_EnumerateSurj(benchmark::State& state) {
    const auto P = make_builtin(PredicateKind::Surj, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const int p = static_cast<int>(state.range(2));
    for (auto _ : state) {
        const auto stats = enumerate_polymorphisms(P, p, [](const FunctionFamily&) { return true; });
        benchmark::DoNotOptimize(stats.families);
    }
}
BENCHMARK(BM_EnumerateSurj)->Args({3, 2, 1})->Args({3, 2, 2})->Args({4, 2, 1})->Args({4, 3, 1});

void BM_IsPolymorphism(benchmark::State& state) {
    const auto P = make_builtin(PredicateKind::Surj, 4, 3);
    const auto F = outline_counterexample(4, 3, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(is_polymorphism(F, P).holds);
}
BENCHMARK(BM_IsPolymorphism)->Arg(2)->Arg(3);

void BM_DeficiencyExact(benchmark::State& state) {
    const auto P = make_builtin(PredicateKind::Surj, 4, 3);
    const auto U = ProfileDistribution::uniform(P);
    const auto F = outline_counterexample(4, 3, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(deficiency(F, U).delta);
}
BENCHMARK(BM_DeficiencyExact)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DeficiencyMonteCarlo(benchmark::State& state) {
    const auto P = make_builtin(PredicateKind::Surj, 4, 3);
    const auto U = ProfileDistribution::uniform(P);
    const auto F = outline_counterexample(4, 3, 6);
    DeficiencyOptions opt;
    opt.method = DeficiencyMethod::MonteCarlo;
    opt.seed = 1;
    opt.samples = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(deficiency(F, U, opt).delta);
}
BENCHMARK(BM_DeficiencyMonteCarlo)->Arg(100'000)->Unit(benchmark::kMillisecond);

BooleanTable random_table(Rng& rng, int p, int n) {
    std::uint64_t cells = 1;
    for (int t = 0; t < p; ++t) cells *= static_cast<std::uint64_t>(n);
    std::vector<std::uint8_t> bits(cells);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
    return BooleanTable(p, n, std::move(bits));
}

void BM_Decompose(benchmark::State& state) {
    Rng rng(7);
    const auto f = RealTable::from_boolean(random_table(rng, static_cast<int>(state.range(0)), static_cast<int>(state.range(1))));
    for (auto _ : state) benchmark::DoNotOptimize(decompose(f));
}
BENCHMARK(BM_Decompose)->Args({4, 3})->Args({6, 3})->Args({5, 4});

void BM_PairExpectation(benchmark::State& state) {
    Rng rng(11);
    const int p = static_cast<int>(state.range(0));
    const auto f = random_table(rng, p, 3), g = random_table(rng, p, 3);
    const auto df = decompose(RealTable::from_boolean(f)), dg = decompose(RealTable::from_boolean(g));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pair_expectation_direct(f, g));
        benchmark::DoNotOptimize(pair_expectation_spectral(df, dg));
    }
}
BENCHMARK(BM_PairExpectation)->Arg(3)->Arg(5);

}  // namespace
BENCHMARK_MAIN();
