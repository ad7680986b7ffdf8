#include "dualres/dual_complex.hpp"
#include "dualres/engine.hpp"
#include "dualres/generator.hpp"
#include "dualres/poly_oracle.hpp"
#include "dualres/snc_model.hpp"

#include <benchmark/benchmark.h>

using namespace dualres;

namespace {

// Full germ of x_1 ... x_n = 0: 2^n - 1 cells.
void BM_HomologyHyperplaneGerm(benchmark::State& state) {
    const auto d = dual_complex_of(coordinate_hyperplanes(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(homology(d));
    state.counters["cells"] = static_cast<double>(d.size());
}
BENCHMARK(BM_HomologyHyperplaneGerm)->DenseRange(3, 7);

void BM_OpenStarRemoval(benchmark::State& state) {
    const auto d = dual_complex_of(coordinate_hyperplanes(6));
    for (auto _ : state) benchmark::DoNotOptimize(remove_open_star(d, "E1*E2"));
}
BENCHMARK(BM_OpenStarRemoval);

void BM_ResolveDeepStratum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto snc = coordinate_hyperplanes(n);
    std::map<std::string, int> corank;
    for (const auto& s : snc.strata) {
        if (s.indices.size() >= 2) corank[s.id] = static_cast<int>(std::min<std::size_t>(s.indices.size() - 1, 3));
    }
    const auto seed = seed_from_snc(snc, corank);
    EngineConfig cfg;
    cfg.policy = state.range(1) == 0 ? ExponentPolicy::kSizeMinusTwo : ExponentPolicy::kSquareMinusTwo;
    std::size_t events = 0;
    for (auto _ : state) {
        const auto t = run(seed, cfg);
        events = t.events.size();
        benchmark::DoNotOptimize(t);
    }
    state.counters["events"] = static_cast<double>(events);
}
BENCHMARK(BM_ResolveDeepStratum)->ArgsProduct({{3, 4, 5}, {0, 1}});

void BM_ResolveRandomSeeds(benchmark::State& state) {
    std::vector<ResolutionState> seeds;
    for (std::uint64_t s = 0; s < 50; ++s) seeds.push_back(seed_from_snc(random_seed_spec(s)));
    for (auto _ : state) {
        for (const auto& s : seeds) benchmark::DoNotOptimize(run(s, {}));
    }
}
BENCHMARK(BM_ResolveRandomSeeds);

void BM_VerifyRule(benchmark::State& state) {
    const auto kind = static_cast<RuleKind>(state.range(0));
    const auto grid = default_grid(kind);
    for (auto _ : state) benchmark::DoNotOptimize(verify_grid(grid, 1));
    state.SetLabel(to_string(kind));
}
BENCHMARK(BM_VerifyRule)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_DetReduction(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(det_reduction_check(m));
}
BENCHMARK(BM_DetReduction)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
