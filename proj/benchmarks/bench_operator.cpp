#include "selfsim/operator.hpp"
#include "selfsim/params.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace selfsim;

static void BM_LaplacianPoint(benchmark::State& state) {
    const auto p = make_params(0.5 + 0.5 * static_cast<double>(state.range(0)), 1.0, 1.0);
    const auto f = TestFunction::gaussian();
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(laplacian_apply_point(p, f, x));
        x = std::fmod(x + 0.37, 3.0);
    }
}
BENCHMARK(BM_LaplacianPoint)->Arg(0)->Arg(1)->Arg(2);  // delta 0.5, 1, 1.5

static void BM_LaplacianSpectral(benchmark::State& state) {
    const auto p = make_params(0.7, 1.0, 1.0);
    const auto g = Grid1D::centered(0.05, static_cast<std::size_t>(state.range(0)));
    const auto f = RealField::sample(g, [](double x) { return std::exp(-x * x); });
    for (auto _ : state) benchmark::DoNotOptimize(laplacian_apply_spectral(p, f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LaplacianSpectral)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oNLogN);

static void BM_LaplacianGrid(benchmark::State& state) {
    const auto p = make_params(0.7, 1.0, 1.0);
    const auto g = Grid1D::centered(0.05, static_cast<std::size_t>(state.range(0)));
    const auto f = RealField::sample(g, [](double x) { return std::exp(-x * x); });
    for (auto _ : state) benchmark::DoNotOptimize(laplacian_apply_grid(p, f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LaplacianGrid)->RangeMultiplier(4)->Range(1 << 8, 1 << 12)->Complexity();

static void BM_WeylMarchaud(benchmark::State& state) {
    const auto p = make_params(0.5, 1.0, 1.0);
    const auto f = TestFunction::gaussian();
    for (auto _ : state) benchmark::DoNotOptimize(laplacian_from_weyl_marchaud(p, f, 0.3));
}
BENCHMARK(BM_WeylMarchaud);
