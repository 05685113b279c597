#include "models.hpp"

#include <sheafctx/gluing.hpp>

#include <benchmark/benchmark.h>

using namespace sheafctx;

static void sheaf_check_ring(benchmark::State & state)
{
    auto support = support_of(bench::odd_ring(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(sheaf_check(support));
}
BENCHMARK(sheaf_check_ring)->DenseRange(3, 11, 2);

static void noncontextual_lp(benchmark::State & state)
{
    auto model = bench::fixture(state.range(0) ? "prbox" : "bell_uniform");
    for (auto _ : state)
        benchmark::DoNotOptimize(is_noncontextual(model));
}
BENCHMARK(noncontextual_lp)->Arg(0)->Arg(1);

static void fraction_ring(benchmark::State & state)
{
    auto model = bench::odd_ring(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(contextual_fraction(model));
}
BENCHMARK(fraction_ring)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);
