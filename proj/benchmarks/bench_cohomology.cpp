#include "models.hpp"

#include <sheafctx/cohomology.hpp>

#include <benchmark/benchmark.h>

using namespace sheafctx;

static void coboundary_build(benchmark::State & state)
{
    auto support = support_of(bench::odd_ring(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_coboundary_matrices(support));
}
BENCHMARK(coboundary_build)->RangeMultiplier(2)->Range(4, 32);

static void invariants_ring(benchmark::State & state)
{
    auto support = support_of(bench::odd_ring(static_cast<std::size_t>(state.range(0))));
    auto matrices = build_coboundary_matrices(support);
    for (auto _ : state)
        benchmark::DoNotOptimize(cech_invariants(matrices));
}
BENCHMARK(invariants_ring)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

static void report_prbox(benchmark::State & state)
{
    auto support = support_of(bench::fixture("prbox"));
    for (auto _ : state)
        benchmark::DoNotOptimize(obstruction_report(support, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(report_prbox)->Arg(1)->Arg(4);
