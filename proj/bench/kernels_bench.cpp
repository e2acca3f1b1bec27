// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lpflow/core/grid.hpp"
#include "lpflow/core/kernels.hpp"
#include "lpflow/core/profile.hpp"
#include "lpflow/core/reference.hpp"

namespace {

using namespace lpflow;

GridSpec bench_grid(benchmark::State& st) {
    return make_grid(2, 64.0, static_cast<std::size_t>(st.range(0)));
}

AlignedVector<double> ramp(std::size_t n) {
    AlignedVector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(0.001 * static_cast<double>(i));
    return v;
}

void BM_WindowSum_Serial(benchmark::State& st) {
    const GridSpec g = bench_grid(st);
    const auto v = ramp(g.nodes());
    for (auto _ : st) benchmark::DoNotOptimize(reference::window_power_sum(g, v, 1.0, g.window_radius()));
}

void BM_WindowSum_OpenMP(benchmark::State& st) {
    const GridSpec g = bench_grid(st);
    const auto v = ramp(g.nodes());
    for (auto _ : st) benchmark::DoNotOptimize(kernels::window_power_sum(g, v, 1.0, g.window_radius()));
}

void BM_ApplySymbol_Serial(benchmark::State& st) {
    const GridSpec g = bench_grid(st);
    AlignedVector<Complex> in(g.spectral_nodes(), Complex(1.0, 0.5)), out(g.spectral_nodes());
    for (auto _ : st) {
        reference::apply_symbol(g, in, out, [](const Vec3& xi) { return chi(std::hypot(xi[0], xi[1])); });
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_ApplySymbol_OpenMP(benchmark::State& st) {
    const GridSpec g = bench_grid(st);
    AlignedVector<Complex> in(g.spectral_nodes(), Complex(1.0, 0.5)), out(g.spectral_nodes());
    for (auto _ : st) {
        kernels::apply_symbol(g, in, out, [](const Vec3& xi) { return chi(std::hypot(xi[0], xi[1])); });
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_Axpy_Serial(benchmark::State& st) {
    const std::size_t n = static_cast<std::size_t>(st.range(0) * st.range(0));
    const auto x = ramp(n);
    AlignedVector<double> y(n, 0.0);
    for (auto _ : st) {
        reference::axpy(0.5, x, y);
        benchmark::DoNotOptimize(y.data());
    }
}

void BM_Axpy_OpenMP(benchmark::State& st) {
    const std::size_t n = static_cast<std::size_t>(st.range(0) * st.range(0));
    const auto x = ramp(n);
    AlignedVector<double> y(n, 0.0);
    for (auto _ : st) {
        kernels::axpy(0.5, x, y);
        benchmark::DoNotOptimize(y.data());
    }
}

}  // namespace

BENCHMARK(BM_WindowSum_Serial)->Arg(256)->Arg(1024);
BENCHMARK(BM_WindowSum_OpenMP)->Arg(256)->Arg(1024);
BENCHMARK(BM_ApplySymbol_Serial)->Arg(256)->Arg(1024);
BENCHMARK(BM_ApplySymbol_OpenMP)->Arg(256)->Arg(1024);
BENCHMARK(BM_Axpy_Serial)->Arg(256)->Arg(1024);
BENCHMARK(BM_Axpy_OpenMP)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
