#include <benchmark/benchmark.h>

#include "twcert/apex_forest.hpp"
#include "twcert/menger.hpp"
#include "twcert/oracles.hpp"
#include "twcert/wheel.hpp"

namespace twcert {
namespace {

void BM_DecomposeWheel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const Graph g = oracles::random_gnp(n, 4.0 / n, 17);
  for (auto _ : state) benchmark::DoNotOptimize(wheel::decompose_wheel(g, std::nullopt, k));
}
BENCHMARK(BM_DecomposeWheel)->ArgsProduct({{30, 100, 300}, {3, 5, 8}});

void BM_DecomposeApexForest(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph f = oracles::path(static_cast<int>(state.range(1)));
  const Graph g = oracles::random_gnp(n, 3.0 / n, 23);
  for (auto _ : state) benchmark::DoNotOptimize(apex_forest::decompose_apex_forest(g, f));
}
BENCHMARK(BM_DecomposeApexForest)->ArgsProduct({{30, 100, 300}, {3, 5}});

void BM_MaxDisjointPaths(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const Graph g = oracles::grid(side, side);
  VertexSet left, right;
  for (int r = 0; r < side; ++r) {
    left.insert(r * side);
    right.insert(r * side + side - 1);
  }
  for (auto _ : state) benchmark::DoNotOptimize(max_disjoint_paths(g, left, right));
}
BENCHMARK(BM_MaxDisjointPaths)->Arg(5)->Arg(10)->Arg(20);

void BM_ExactTreewidth(benchmark::State& state) {
  const Graph g = oracles::random_gnp(static_cast<int>(state.range(0)), 0.4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(oracles::exact_treewidth(g));
}
BENCHMARK(BM_ExactTreewidth)->DenseRange(8, 14, 3);

}  // namespace
}  // namespace twcert

BENCHMARK_MAIN();
