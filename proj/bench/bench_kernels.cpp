// Serial reference kernels vs their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <vector>

#include "rgg/graph.hpp"
#include "rgg/polytope.hpp"
#include "rgg/reference.hpp"
#include "rgg/sis.hpp"
#include "rgg/spectral.hpp"

namespace {

const rgg::RggSpec kSpec1d{1000, 0.01, 1, 7};
const rgg::RggSpec kSpec2d{1000, 0.12615662610100802, 2, 7};

// 2D graph with mean degree 50 at n = state.range(0).
rgg::RggSpec build_spec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  return rgg::RggSpec{n, rgg::radius_for_mean_degree(n, 50.0, 2), 2, 7};
}

void BM_BuildCellList(benchmark::State& state) {
  const auto spec = build_spec(state);
  auto pts = rgg::sample_uniform(spec.n, spec.d, spec.seed);
  for (auto _ : state) benchmark::DoNotOptimize(rgg::build(spec, pts));
}
BENCHMARK(BM_BuildCellList)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_BuildBruteForceSerial(benchmark::State& state) {
  const auto spec = build_spec(state);
  auto pts = rgg::sample_uniform(spec.n, spec.d, spec.seed);
  for (auto _ : state) benchmark::DoNotOptimize(rgg::reference::build_brute_force(spec, pts));
}
BENCHMARK(BM_BuildBruteForceSerial)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_WalkTotalsParallel(benchmark::State& state) {
  auto g = rgg::build(kSpec2d);
  for (auto _ : state) benchmark::DoNotOptimize(rgg::closed_walk_totals(g, 4));
}
BENCHMARK(BM_WalkTotalsParallel);

void BM_WalkTotalsSerial(benchmark::State& state) {
  auto g = rgg::build(kSpec2d);
  for (auto _ : state) benchmark::DoNotOptimize(rgg::reference::closed_walk_totals(g, 4));
}
BENCHMARK(BM_WalkTotalsSerial);

void BM_TrianglesParallel(benchmark::State& state) {
  auto g = rgg::build(kSpec2d);
  for (auto _ : state) benchmark::DoNotOptimize(rgg::count_triangles(g));
}
BENCHMARK(BM_TrianglesParallel);

void BM_TrianglesSerial(benchmark::State& state) {
  auto g = rgg::build(kSpec2d);
  for (auto _ : state) benchmark::DoNotOptimize(rgg::reference::count_triangles(g));
}
BENCHMARK(BM_TrianglesSerial);

void BM_VolumeOracleParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rgg::estimate_volume(8, 1'000'000, 3));
}
BENCHMARK(BM_VolumeOracleParallel);

void BM_VolumeOracleSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rgg::reference::volume_acceptances(8, 1'000'000, 3));
}
BENCHMARK(BM_VolumeOracleSerial);

void BM_SisStepParallel(benchmark::State& state) {
  auto g = rgg::build(kSpec1d);
  auto p = rgg::seed_infection(g.size(), 0.5, 1);
  std::vector<double> out(g.size());
  for (auto _ : state) benchmark::DoNotOptimize(rgg::step(g, p, 0.02, 0.1, out));
}
BENCHMARK(BM_SisStepParallel);

void BM_SisStepSerial(benchmark::State& state) {
  auto g = rgg::build(kSpec1d);
  auto p = rgg::seed_infection(g.size(), 0.5, 1);
  std::vector<double> out(g.size());
  for (auto _ : state) benchmark::DoNotOptimize(rgg::reference::sis_step(g, p, 0.02, 0.1, out));
}
BENCHMARK(BM_SisStepSerial);

}  // namespace

BENCHMARK_MAIN();
