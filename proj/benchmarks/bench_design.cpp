#include <benchmark/benchmark.h>

#include "egocr/baselines.hpp"
#include "egocr/diagnostics.hpp"
#include "egocr/ego_design.hpp"
#include "egocr/generators.hpp"
#include "egocr/study.hpp"

using namespace egocr;

namespace {

Graph ba_graph(std::size_t n) {
  Rng rng(n);
  return gen_ba(n, 6, rng);
}

void BM_BuildDesign(benchmark::State& state) {
  const Graph g = ba_graph(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_design(g, 1.0, seed++));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildDesign)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond)->Complexity();

void BM_ThreeNet(benchmark::State& state) {
  const Graph g = ba_graph(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(three_net(g, seed++));
}
BENCHMARK(BM_ThreeNet)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_ReassignmentDelta(benchmark::State& state) {
  const Graph g = ba_graph(2000);
  const auto c = build_design(g, 1.0, 1);
  std::vector<std::pair<UnitId, ClusterId>> moves;
  for (UnitId m = 0; m < g.size(); ++m) {
    if (c.is_ego(m)) continue;
    for (UnitId e : g.neighbors(m)) {
      if (c.is_ego(e) && e != c.cluster_of(m)) moves.emplace_back(m, e);
    }
  }
  std::size_t k = 0;
  for (auto _ : state) {
    const auto [m, to] = moves[k++ % moves.size()];
    benchmark::DoNotOptimize(c.evaluate_reassignment(g, m, to));
  }
}
BENCHMARK(BM_ReassignmentDelta);

void BM_Diagnostics(benchmark::State& state) {
  const Graph g = ba_graph(static_cast<std::size_t>(state.range(0)));
  const auto c = build_design(g, 1.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dependency_diagnostics(g, c));
}
BENCHMARK(BM_Diagnostics)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Replication(benchmark::State& state) {
  SimConfig cfg;
  cfg.network.model = NetworkModel::BarabasiAlbert;
  cfg.network.n = 1000;
  cfg.network.m = 5;
  cfg.designs = {DesignKind::EgoCr};
  cfg.base_seed = 3;
  std::size_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_replication(cfg, r++));
}
BENCHMARK(BM_Replication)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
