#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "nslab/excursion.hpp"
#include "nslab/fourier.hpp"
#include "nslab/run_config.hpp"
#include "nslab/solver.hpp"

namespace {

using namespace nslab;

GridSpec grid2(int n) { return GridSpec{2, n, 2.0 / 3.0}; }

void BM_FourierRoundTrip(benchmark::State& state) {
    const GridSpec grid = grid2(static_cast<int>(state.range(0)));
    const SpectralField u = random_div_free_field(grid, 1, -3.0, 1.0);
    for (auto _ : state) {
        SpectralField back = to_spectral(to_physical(u));
        benchmark::DoNotOptimize(back);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FourierRoundTrip)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_NonlinearTerm(benchmark::State& state) {
    const GridSpec grid = grid2(static_cast<int>(state.range(0)));
    const SpectralField u = random_div_free_field(grid, 2, -3.0, 1.0);
    for (auto _ : state) {
        SpectralField nl = nonlinear_term(u, u);
        benchmark::DoNotOptimize(nl);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NonlinearTerm)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_Projection(benchmark::State& state) {
    const GridSpec grid = grid2(static_cast<int>(state.range(0)));
    const SpectralField u = random_div_free_field(grid, 3, -3.0, 1.0);
    for (auto _ : state) {
        SpectralField p = project_div_free(u);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_Projection)->RangeMultiplier(2)->Range(16, 128);

void BM_SolverStep(benchmark::State& state) {
    RunConfig cfg;
    cfg.grid = grid2(static_cast<int>(state.range(0)));
    cfg.mollifier.m = cfg.grid.n / 2;
    cfg.ic = InitialCondition::RandomDivFree;
    cfg.seed = 4;
    cfg.t_end = 1.0;
    cfg.dt = 1e-3;
    LeraySolver solver(cfg);
    for (auto _ : state) {
        solver.step();
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolverStep)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_ExcursionExtraction(benchmark::State& state) {
    const std::size_t samples = static_cast<std::size_t>(state.range(0));
    std::vector<double> times(samples), rho(samples);
    std::mt19937_64 engine(7);
    std::uniform_real_distribution<double> jitter(0.0, 0.2);
    for (std::size_t i = 0; i < samples; ++i) {
        times[i] = static_cast<double>(i);
        rho[i] = 1.0 + std::sin(0.01 * i) + jitter(engine);
    }
    for (auto _ : state) {
        ExcursionSet set = extract_excursions(times, rho, 1.5, 0.0, static_cast<double>(samples - 1));
        benchmark::DoNotOptimize(set);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExcursionExtraction)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->Complexity();

}  // namespace

BENCHMARK_MAIN();
