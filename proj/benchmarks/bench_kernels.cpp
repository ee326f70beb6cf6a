#include "selfsim/dynamics.hpp"
#include "selfsim/params.hpp"

#include <benchmark/benchmark.h>

using namespace selfsim;

// range(0): t in tenths, so the series argument grows like t^2.
static void BM_QSeries(benchmark::State& state) {
    const auto p = make_params(0.6, 1.0, 1.0);
    const double t = 0.1 * static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernel_Q_series(p, 1.0, t));
}
BENCHMARK(BM_QSeries)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

static void BM_QFourier(benchmark::State& state) {
    const auto p = make_params(0.6, 1.0, 1.0);
    const double t = 0.1 * static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernel_Q_fourier(p, 1.0, t));
}
BENCHMARK(BM_QFourier)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

static void BM_QdotSeries(benchmark::State& state) {
    const auto p = make_params(1.4, 1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(kernel_Qdot_series(p, 1.5, 1.0));
}
BENCHMARK(BM_QdotSeries);

static void BM_QSpectral(benchmark::State& state) {
    const auto p = make_params(0.6, 1.0, 1.0);
    const auto g = Grid1D::centered(0.02, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernel_Q_spectral(p, g, 1.0));
}
BENCHMARK(BM_QSpectral)->Arg(1 << 12)->Arg(1 << 16);
