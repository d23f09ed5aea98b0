#include <benchmark/benchmark.h>

#include <vector>

#include "twinswarm/comms.hpp"
#include "twinswarm/random.hpp"

using namespace twinswarm;

namespace {

std::vector<AgentSnapshot> scatter(std::size_t n) {
    RngStream rng(7);
    std::vector<AgentSnapshot> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({{rng.uniform(0.0, 640.0), rng.uniform(0.0, 600.0)}, rng.uniform(0.0, 500.0)});
    }
    return out;
}

void BM_ExchangeD2D(benchmark::State& state) {
    const auto agents = scatter(static_cast<std::size_t>(state.range(0)));
    const double radius = static_cast<double>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(exchange_d2d(agents, radius));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExchangeD2D)->ArgsProduct({{10, 50, 200}, {50, 200, 900}});

void BM_ExchangeCellular(benchmark::State& state) {
    const auto agents = scatter(static_cast<std::size_t>(state.range(0)));
    const auto partners = static_cast<std::size_t>(state.range(1));
    RngStream rng(11);
    for (auto _ : state) benchmark::DoNotOptimize(exchange_cellular(agents, partners, rng));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExchangeCellular)->Args({50, 1})->Args({50, 10})->Args({50, 49})->Args({200, 10});

void BM_ExchangeDigitalTwin(benchmark::State& state) {
    const auto agents = scatter(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(exchange_digital_twin(agents));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExchangeDigitalTwin)->Arg(10)->Arg(50)->Arg(200);

}  // namespace
