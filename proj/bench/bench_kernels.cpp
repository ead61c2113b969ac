#include "rotforce/kernels.hpp"
#include "rotforce/rotarith.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace rotforce;

namespace {

std::vector<circle::CircleMap> maps(int count) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    std::vector<circle::CircleMap> out;
    for (int i = 0; i < count; ++i) {
        const moebius::MoebiusReal g(1.0 + u(rng), u(rng), u(rng), 1.0);
        out.push_back(circle::CircleMap::from_moebius(g * moebius::MoebiusReal::rotation(M_PI * u(rng)) * g.inverse()));
    }
    return out;
}

double plus_residual(std::span<const double> x) {
    return rotarith::plus_l_signed(x[0], x[0], 1.0) - 0.587533;
}

template <auto Fn>
void rotation_numbers(benchmark::State& state) {
    const auto m = maps(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Fn(m, 20000));
}

template <auto Fn>
void sample_grid(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(Fn(plus_residual, 1, state.range(0)));
}

template <auto Fn>
void fit_complement(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(Fn(0.3, 0.6, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(rotation_numbers<kernels::rotation_numbers_serial>)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(rotation_numbers<kernels::rotation_numbers_omp>)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(sample_grid<kernels::sample_grid_serial>)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(sample_grid<kernels::sample_grid_omp>)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(fit_complement<kernels::fit_complement_serial>)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(fit_complement<kernels::fit_complement_omp>)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
