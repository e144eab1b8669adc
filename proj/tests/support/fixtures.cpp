#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "ciaodv/builtin.hpp"
#include "ciaodv/text.hpp"

namespace ciaodv::testing {

namespace {

bool matches(const TraceEvent& e, Match fields) {
  for (const auto& [k, v] : fields) {
    const std::string* got = e.field(k);
    if (!got || *got != v) return false;
  }
  return true;
}

}  // namespace

std::optional<std::size_t> find_event(const SimTrace& trace, TraceKind kind, std::string_view node, Match fields,
                                      std::optional<MessageKind> msg, std::size_t from) {
  const auto id = trace.names().find(node);
  if (!id) return std::nullopt;
  for (std::size_t i = from; i < trace.events.size(); ++i) {
    const TraceEvent& e = trace.events[i];
    if (e.kind != kind || e.node != *id) continue;
    if (msg && e.msg != msg) continue;
    if (matches(e, fields)) return i;
  }
  return std::nullopt;
}

std::vector<const TraceEvent*> events_of(const SimTrace& trace, TraceKind kind, std::string_view node) {
  std::optional<NodeId> id;
  if (!node.empty()) id = trace.names().find(node);
  std::vector<const TraceEvent*> out;
  for (const auto& e : trace.events)
    if (e.kind == kind && (!id || e.node == *id)) out.push_back(&e);
  return out;
}

std::vector<std::string> event_lines(const SimTrace& trace, std::initializer_list<TraceKind> kinds) {
  const NodeNames names = trace.names();
  std::vector<std::string> out;
  for (const auto& e : trace.events) {
    if (std::find(kinds.begin(), kinds.end(), e.kind) == kinds.end()) continue;
    std::string line = text::format_ms_fixed(e.at) + ' ' + std::string(to_string(e.kind)) + ' ' + names.label(e.node);
    for (const auto& [k, v] : e.fields) line += ' ' + k + '=' + v;
    out.push_back(std::move(line));
  }
  return out;
}

ScenarioSpec fig2_with_departure(std::int64_t at_ms) {
  ScenarioSpec s = builtin("fig2");
  s.mobility.departures.push_back(Departure{*s.find("N5"), from_ms(at_ms)});
  return s;
}

ScenarioSpec fixture(std::string_view name, Protocol protocol, std::optional<RouteLimit> limit) {
  ScenarioSpec s = builtin(name);
  s.protocol = protocol;
  if (limit) s.set_route_limit(*limit);
  return s;
}

ScenarioSpec suite_scenario(std::uint64_t seed, Protocol protocol) {
  GenParams g;
  g.protocol = protocol;
  return random_scenario(g, seed);
}

double saturation_drops(const std::vector<SimTime>& joins, double rate_pps, double capacity_pps,
                        std::uint32_t queue_len, SimTime end) {
  std::vector<SimTime> t = joins;
  std::sort(t.begin(), t.end());
  double excess = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const SimTime until = k + 1 < t.size() ? std::min(t[k + 1], end) : end;
    if (until <= t[k]) continue;
    const double overload = static_cast<double>(k + 1) * rate_pps - capacity_pps;
    if (overload > 0) excess += overload * to_ms(until - t[k]) / 1000.0;
  }
  return std::max(0.0, excess - queue_len);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

}  // namespace ciaodv::testing
