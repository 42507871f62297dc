// Serial reference vs OpenMP kernels on synthetic national graphs.

#include "mobnet/geo.hpp"
#include "mobnet/metrics.hpp"
#include "mobnet/percolation.hpp"
#include "mobnet/synthetic.hpp"

#include <benchmark/benchmark.h>

using namespace mobnet;

namespace {

MobilityGraph national(int nodes)
{
    ArchetypeParams p{Archetype::multi_cluster, nodes, 4, 1.0, 1};
    auto d = generate_synthetic(p);
    return build_graph(d.records, Interval{TimePoint{p.start}, TimePoint{p.start + std::chrono::days{1}}}, d.registry);
}

void BM_EfficiencySerial(benchmark::State& state)
{
    auto g = national(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(serial::efficiency(g).global);
    state.SetComplexityN(state.range(0));
}

void BM_EfficiencyParallel(benchmark::State& state)
{
    auto g = national(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(efficiency(g).global);
    state.SetComplexityN(state.range(0));
}

void BM_PercolationSweep(benchmark::State& state)
{
    ArchetypeParams p{Archetype::core_periphery, static_cast<int>(state.range(0)), 15, 1.0, 42};
    auto d = generate_synthetic(p);
    auto g = build_graph(d.records, Interval{TimePoint{p.start}, TimePoint{p.start + std::chrono::days{1}}}, d.registry);
    for (auto _ : state) benchmark::DoNotOptimize(percolation_sweep(g, SweepDirection::increasing).steps.size());
}

void BM_Voronoi(benchmark::State& state)
{
    ArchetypeParams p{Archetype::core_periphery, static_cast<int>(state.range(0)), 15, 1.0, 3};
    auto d = generate_synthetic(p);
    auto box = default_bounds(d.registry);
    for (auto _ : state) benchmark::DoNotOptimize(voronoi(d.registry, box).size());
}

} // namespace

BENCHMARK(BM_EfficiencySerial)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EfficiencyParallel)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PercolationSweep)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Voronoi)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
