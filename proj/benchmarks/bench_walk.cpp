#include <benchmark/benchmark.h>

#include <numbers>

#include "nisim/analysis.hpp"
#include "nisim/analytic_dd.hpp"
#include "nisim/interferometer.hpp"

using namespace nisim;

static void BM_ApplyBlade(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BladeParams p(n, std::numbers::pi / 64);
  WaveField in = prepare_input(0, Branch::A);
  for (auto _ : state) benchmark::DoNotOptimize(apply_blade(in, p));
  // node updates: sum over layers of the current frame width
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n) * (n + 1));
}
BENCHMARK(BM_ApplyBlade)->Arg(44)->Arg(200)->Arg(2000);

static void BM_PropagateDFS(benchmark::State& state) {
  Geometry g;
  g.blade = BladeParams(static_cast<int>(state.range(0)), std::numbers::pi / 64);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_paths(g));
}
BENCHMARK(BM_PropagateDFS)->Arg(44)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_DefocusSweep(benchmark::State& state) {
  Geometry g;
  g.blade = BladeParams(44, std::numbers::pi / 64);
  for (auto _ : state) benchmark::DoNotOptimize(defocus_sweep(g, 0, 44));
}
BENCHMARK(BM_DefocusSweep)->Unit(benchmark::kMillisecond);

static void BM_CoherenceIntegral(benchmark::State& state) {
  dd::DDParams p;
  for (auto _ : state) benchmark::DoNotOptimize(dd::coherence_integral(p, p.z0));
}
BENCHMARK(BM_CoherenceIntegral)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
