// Serial vs OpenMP kernel comparison, and brute vs separable quadratic path.
#include <benchmark/benchmark.h>

#include <random>

#include "infconv/envelope.hpp"

using namespace infconv;

namespace {

GridFn random_fn(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ExtReal> v(g.size());
    for (auto& x : v) {
        if (rng() % 10 == 0)
            x = ExtReal::infinity();
        else
            x = 5.0 * double(rng() >> 11) * 0x1.0p-53;
    }
    v[0] = ExtReal(1.0);
    return GridFn(g, std::move(v));
}

void bm_moreau_fast_serial_1d(benchmark::State& state) {
    Grid g = Grid::make_1d(-4, 4, int(state.range(0)));
    GridFn f = random_fn(g, 42);
    for (auto _ : state) benchmark::DoNotOptimize(moreau_fast_serial(f, 1.0));
}

void bm_moreau_fast_omp_1d(benchmark::State& state) {
    Grid g = Grid::make_1d(-4, 4, int(state.range(0)));
    GridFn f = random_fn(g, 42);
    for (auto _ : state) benchmark::DoNotOptimize(moreau_fast(f, 1.0));
}

void bm_moreau_fast_serial_2d(benchmark::State& state) {
    int n = int(state.range(0));
    Grid g = Grid::make_2d(-2, 2, n, -2, 2, n);
    GridFn f = random_fn(g, 42);
    for (auto _ : state) benchmark::DoNotOptimize(moreau_fast_serial(f, 1.0));
}

void bm_moreau_fast_omp_2d(benchmark::State& state) {
    int n = int(state.range(0));
    Grid g = Grid::make_2d(-2, 2, n, -2, 2, n);
    GridFn f = random_fn(g, 42);
    for (auto _ : state) benchmark::DoNotOptimize(moreau_fast(f, 1.0));
}

void bm_brute_serial_2d(benchmark::State& state) {
    int n = int(state.range(0));
    Grid g = Grid::make_2d(-2, 2, n, -2, 2, n);
    ConvCase c(FuncSpec::norm_p(1, 2), FuncSpec::scaled_squared_norm(1.0, 2), g);
    for (auto _ : state) benchmark::DoNotOptimize(inf_conv_brute_serial(c));
}

void bm_brute_omp_2d(benchmark::State& state) {
    int n = int(state.range(0));
    Grid g = Grid::make_2d(-2, 2, n, -2, 2, n);
    ConvCase c(FuncSpec::norm_p(1, 2), FuncSpec::scaled_squared_norm(1.0, 2), g);
    for (auto _ : state) benchmark::DoNotOptimize(inf_conv_brute(c));
}

}  // namespace

BENCHMARK(bm_moreau_fast_serial_1d)->Arg(4096)->Arg(65536);
BENCHMARK(bm_moreau_fast_omp_1d)->Arg(4096)->Arg(65536);
BENCHMARK(bm_moreau_fast_serial_2d)->Arg(128)->Arg(512);
BENCHMARK(bm_moreau_fast_omp_2d)->Arg(128)->Arg(512);
BENCHMARK(bm_brute_serial_2d)->Arg(64)->Arg(128);
BENCHMARK(bm_brute_omp_2d)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
