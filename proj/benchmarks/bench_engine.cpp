#include <benchmark/benchmark.h>

#include "twinswarm/engine.hpp"
#include "twinswarm/montecarlo.hpp"

using namespace twinswarm;

namespace {

// One full run of the default scenario; rounds/s is the useful figure.
void run_scheme(benchmark::State& state, CommScheme scheme) {
    ScenarioConfig c;
    c.scheme = scheme;
    c.max_rounds = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        c.master_seed = seed++;
        benchmark::DoNotOptimize(run(c));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RunDigitalTwin(benchmark::State& state) { run_scheme(state, DigitalTwin{}); }
void BM_RunD2D(benchmark::State& state) { run_scheme(state, D2D{100.0}); }
void BM_RunCellular(benchmark::State& state) { run_scheme(state, Cellular{5}); }

BENCHMARK(BM_RunDigitalTwin)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunD2D)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunCellular)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_GlobalOracle(benchmark::State& state) {
    ScenarioConfig c;
    c.max_rounds = 500;
    for (auto _ : state) benchmark::DoNotOptimize(oracle_global_pso(c));
}
BENCHMARK(BM_GlobalOracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
