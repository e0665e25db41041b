#include <benchmark/benchmark.h>

#include "homnet/rewiring.hpp"
#include "homnet/rng.hpp"
#include "homnet/synth.hpp"

namespace {

homnet::BipartiteNetwork make_network(int guests, int hosts) {
    homnet::SynthSpec spec;
    spec.n_guests = static_cast<std::size_t>(guests);
    spec.n_hosts = static_cast<std::size_t>(hosts);
    spec.activity = homnet::ActivityModel::power_law(2.3, 100);
    spec.seed = 42;
    return homnet::generate(spec).network;
}

void BM_xswap_step(benchmark::State& state) {
    auto net = make_network(static_cast<int>(state.range(0)),
                            static_cast<int>(state.range(0)) / 10);
    homnet::RewireState rewire(net);
    auto rng = homnet::make_stream(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rewire.xswap_step(rng));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_xswap_step)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_burn_in(benchmark::State& state) {
    auto net = make_network(2000, 200);
    homnet::RewireConfig config;
    config.n_configs = 1;
    config.burn_in = homnet::BurnIn::fixed(state.range(0));
    for (auto _ : state)
        homnet::generate_ensemble(net, config,
                                  [](int, const homnet::RewireState&) {});
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_burn_in)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
