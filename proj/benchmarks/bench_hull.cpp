#include <benchmark/benchmark.h>

#include "so3cover/delaunay.hpp"
#include "so3cover/evaluate.hpp"

using namespace so3cover;

static void BM_TriangulateRandom(benchmark::State& state) {
  const auto set = random_set(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    auto tri = triangulate(set.points);
    benchmark::DoNotOptimize(tri.covering_radius);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TriangulateRandom)->RangeMultiplier(4)->Range(256, 65536)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_TriangulateSixHundredCell(benchmark::State& state) {
  const auto set = expand_orbit(std::vector<Quaternion>{Quaternion::identity()}, laue_group("2I"));
  for (auto _ : state) benchmark::DoNotOptimize(triangulate(set.points).simplices.size());
}
BENCHMARK(BM_TriangulateSixHundredCell)->Unit(benchmark::kMicrosecond);

static void BM_NearestNeighbor(benchmark::State& state) {
  const auto set = random_set(static_cast<std::size_t>(state.range(0)), 2);
  const NearestNeighborIndex index(set.points);
  Rng rng = make_rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(index.nearest(random_quaternion(rng).vec()).index);
}
BENCHMARK(BM_NearestNeighbor)->Arg(2000)->Arg(200000);

BENCHMARK_MAIN();
