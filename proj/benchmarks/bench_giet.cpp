#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "generators.hpp"
#include "giet/decomposer.hpp"
#include "giet/first_return.hpp"
#include "giet/rauzy_veech.hpp"

using namespace giet;

static void BM_RvStep(benchmark::State& state) {
    testgen::Rng rng(7);
    testgen::MapOptions opt;
    opt.min_d = opt.max_d = static_cast<int>(state.range(0));
    std::vector<GGiet> maps;
    for (int i = 0; i < 64; ++i) maps.push_back(testgen::random_map(rng, opt));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(rv_step(maps[i++ % maps.size()]));
}
BENCHMARK(BM_RvStep)->Arg(2)->Arg(4)->Arg(6);

static void BM_IterateGolden(benchmark::State& state) {
    const GGiet g = testdata::load("golden_rotation");
    for (auto _ : state) benchmark::DoNotOptimize(iterate(g, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_IterateGolden)->Arg(10)->Arg(40);

static void BM_Decompose(benchmark::State& state) {
    const GGiet m = testdata::load(testdata::names()[state.range(0)]);
    state.SetLabel(testdata::names()[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(decompose(m));
}
BENCHMARK(BM_Decompose)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

static void BM_FirstReturn(benchmark::State& state) {
    testgen::Rng rng(9);
    std::vector<std::pair<GGiet, Interval>> cases;
    for (int i = 0; i < 32; ++i) {
        GGiet m = testgen::random_map(rng);
        const Interval J = testgen::random_subinterval(rng, m.length());
        cases.emplace_back(std::move(m), J);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [m, J] = cases[i++ % cases.size()];
        benchmark::DoNotOptimize(first_return(m, J, 1000, ExcessPolicy::Exclude));
    }
}
BENCHMARK(BM_FirstReturn);

BENCHMARK_MAIN();
