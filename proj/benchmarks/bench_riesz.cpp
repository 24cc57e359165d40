#include <benchmark/benchmark.h>

#include "so3cover/optimize.hpp"

using namespace so3cover;

static void BM_RieszEnergy(benchmark::State& state) {
  const auto group = laue_group("2I");
  const auto basis = sample_uniform(1, static_cast<std::size_t>(state.range(0)));
  const auto set = expand_orbit(basis, group);
  for (auto _ : state) benchmark::DoNotOptimize(riesz_energy(set, 2.0).energy);
  state.counters["points"] = static_cast<double>(set.n_points());
}
BENCHMARK(BM_RieszEnergy)->Arg(4)->Arg(16)->Arg(64);

static void BM_OdtSweep(benchmark::State& state) {
  const auto group = laue_group("2I");
  const auto basis = sample_uniform(2, 16);
  for (auto _ : state) benchmark::DoNotOptimize(odt_smooth(basis, group, 1).theta);
}
BENCHMARK(BM_OdtSweep)->Unit(benchmark::kMillisecond);

static void BM_RefinePass(benchmark::State& state) {
  const auto group = laue_group("2I");
  const auto basis = sample_uniform(3, 16);
  for (auto _ : state) benchmark::DoNotOptimize(local_refine(basis, group, 1).theta);
}
BENCHMARK(BM_RefinePass)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
