#include <benchmark/benchmark.h>

#include "ciaodv/builtin.hpp"
#include "ciaodv/metrics.hpp"
#include "ciaodv/simulator.hpp"

namespace {

using namespace ciaodv;

void BM_Fig3(benchmark::State& state) {
  ScenarioSpec spec = builtin("fig3");
  spec.protocol = state.range(0) ? Protocol::CiAodv : Protocol::Baseline;
  std::size_t events = 0;
  for (auto _ : state) {
    const SimTrace t = run_scenario(spec);
    events = t.events.size();
    benchmark::DoNotOptimize(t);
  }
  state.counters["trace_events"] = static_cast<double>(events);
}
BENCHMARK(BM_Fig3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RandomRun(benchmark::State& state) {
  GenParams g;
  g.min_nodes = g.max_nodes = static_cast<std::uint32_t>(state.range(0));
  const ScenarioSpec spec = random_scenario(g, 42);
  std::size_t events = 0;
  for (auto _ : state) {
    const SimTrace t = run_scenario(spec);
    events = t.events.size();
    benchmark::DoNotOptimize(t);
  }
  state.counters["events_per_s"] =
      benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_RandomRun)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_ComputeReport(benchmark::State& state) {
  const SimTrace t = run_scenario(star_relay(4));
  for (auto _ : state) benchmark::DoNotOptimize(compute_report(t));
  state.counters["trace_events"] = static_cast<double>(t.events.size());
}
BENCHMARK(BM_ComputeReport)->Unit(benchmark::kMillisecond);

}  // namespace
