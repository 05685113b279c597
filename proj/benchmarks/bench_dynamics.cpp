#include <sheafctx/dynamics.hpp>

#include <benchmark/benchmark.h>

using namespace sheafctx;

static void propagator_step(benchmark::State & state)
{
    Grid grid{static_cast<std::size_t>(state.range(0)), 40.0};
    PhysicalParams params;
    params.lambda = 0.5;
    auto psi = two_gaussian_state(grid, 8.0, 0.5, 0.2);
    Propagator propagator{grid, params, 0.5 * max_stable_dt(grid, params)};
    for (auto _ : state) {
        propagator.step(psi);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(propagator_step)->RangeMultiplier(2)->Range(128, 2048);

static void quantum_potential_spectral(benchmark::State & state)
{
    Grid grid{static_cast<std::size_t>(state.range(0)), 30.0};
    PhysicalParams params;
    RealField rho;
    for (auto & value : gaussian_state(grid, 0.0, 1.3))
        rho.push_back(std::norm(value));
    for (auto _ : state)
        benchmark::DoNotOptimize(quantum_potential(rho, grid, params));
}
BENCHMARK(quantum_potential_spectral)->RangeMultiplier(2)->Range(128, 4096);

static void sweep(benchmark::State & state)
{
    Grid grid{256, 40.0};
    PhysicalParams params;
    auto psi = two_gaussian_state(grid, 8.0, 0.5, 0.2);
    EvolveOptions options;
    options.t_final = 0.2;
    options.dt = 0.15 * grid.dx() * grid.dx();
    options.record_every = 1000;
    std::vector<double> lambdas{0.0, 0.25, 0.5, 0.75, 1.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(lambda_sweep(psi, grid, params, lambdas, options, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
