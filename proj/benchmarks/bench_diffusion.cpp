#include "selfsim/diffusion.hpp"
#include "selfsim/params.hpp"

#include <benchmark/benchmark.h>

using namespace selfsim;

static void BM_WFourier(benchmark::State& state) {
    const auto p = make_params(0.5 * static_cast<double>(state.range(0)), 1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(propagator_W_fourier(p, 2.0, 1.0));
}
BENCHMARK(BM_WFourier)->Arg(1)->Arg(2)->Arg(3);

static void BM_WGrid(benchmark::State& state) {
    const auto p = make_params(0.8, 1.0, 1.0);
    const auto g = Grid1D::centered(0.05, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(propagator_W(p, g, 1.0));
}
BENCHMARK(BM_WGrid)->Arg(1 << 14)->Arg(1 << 18);

static void BM_SampleLevy(benchmark::State& state) {
    const auto p = make_params(1.3, 1.0, 1.0);
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(sample_levy(p, 1.0, static_cast<std::size_t>(state.range(0)), seed++));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleLevy)->Arg(1 << 12)->Arg(1 << 16);
