#include <benchmark/benchmark.h>

#include <vector>

#include "ciaodv/admission.hpp"

namespace {

using namespace ciaodv;

void BM_AdmissionCheck(benchmark::State& state) {
  const auto hops = static_cast<std::uint32_t>(state.range(0));
  const bool reject = state.range(1) != 0;
  std::vector<PathIndex> path;
  for (std::uint32_t i = 0; i <= hops; ++i) path.push_back({NodeId{i}, i % 2});
  if (reject) path[hops / 2].index = 2;
  const RouteLimitTable limits(std::vector<RouteLimit>(hops + 1, RouteLimit::at_most(2)));
  for (auto _ : state) benchmark::DoNotOptimize(admission_check(path, limits));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(path.size()));
}
BENCHMARK(BM_AdmissionCheck)->ArgsProduct({{2, 8, 32}, {0, 1}});

void BM_PathIsSimple(benchmark::State& state) {
  std::vector<NodeId> path;
  for (std::int64_t i = 0; i < state.range(0); ++i) path.push_back(NodeId{static_cast<std::uint32_t>(i)});
  for (auto _ : state) benchmark::DoNotOptimize(path_is_simple(path));
}
BENCHMARK(BM_PathIsSimple)->Arg(4)->Arg(16)->Arg(64);

}  // namespace
