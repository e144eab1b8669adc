#pragma once

// Helpers shared by the unit tests, the acceptance binary and the benchmarks.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ciaodv/scenario.hpp"
#include "ciaodv/trace.hpp"

namespace ciaodv::testing {

using Match = std::initializer_list<std::pair<std::string_view, std::string_view>>;

/// Index of the first event at or after `from` with the given kind, node
/// label, message kind and field values.
std::optional<std::size_t> find_event(const SimTrace& trace, TraceKind kind, std::string_view node, Match fields = {},
                                      std::optional<MessageKind> msg = std::nullopt, std::size_t from = 0);

std::vector<const TraceEvent*> events_of(const SimTrace& trace, TraceKind kind, std::string_view node = {});

/// Events of one kind reduced to "time node fields" strings.
std::vector<std::string> event_lines(const SimTrace& trace, std::initializer_list<TraceKind> kinds);

/// fig2 with N5 leaving the network at `at_ms`.
ScenarioSpec fig2_with_departure(std::int64_t at_ms = 4000);

/// Scenario `name` with its protocol and, optionally, every route limit replaced.
ScenarioSpec fixture(std::string_view name, Protocol protocol, std::optional<RouteLimit> limit = std::nullopt);

/// The random property suite scenario for `seed`.
ScenarioSpec suite_scenario(std::uint64_t seed, Protocol protocol = Protocol::CiAodv);

/// Closed-form drop count at a deterministic server of `capacity_pps` fed by
/// flows of `rate_pps` each, the k-th flow joining at `joins[k]`, until `end`.
/// Overload (k * rate - capacity) accumulates as drops once the `queue_len`
/// buffer has filled.
double saturation_drops(const std::vector<SimTime>& joins, double rate_pps, double capacity_pps,
                        std::uint32_t queue_len, SimTime end);

/// Runs fn(i) for i in [0, n) on all hardware threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ciaodv::testing
