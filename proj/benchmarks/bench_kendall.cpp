#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "homnet/kendall.hpp"

namespace {

void BM_kendall_tau_b(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(7);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = static_cast<double>(rng() % 1000);
        b[i] = static_cast<double>(rng() % 1000);
    }
    for (auto _ : state) benchmark::DoNotOptimize(homnet::kendall_tau_b(a, b));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_kendall_tau_b)->Arg(100)->Arg(10000)->Arg(100000);

}  // namespace
