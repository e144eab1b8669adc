#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ciaodv/ids.hpp"
#include "ciaodv/medium.hpp"
#include "ciaodv/mobility.hpp"
#include "ciaodv/node.hpp"
#include "ciaodv/time.hpp"

namespace ciaodv {

enum class TrafficPattern { Cbr, Poisson };

std::string_view to_string(TrafficPattern p);
std::optional<TrafficPattern> parse_traffic_pattern(std::string_view s);

struct Flow {
  NodeId src;
  NodeId dst;
  SimTime start_at = 0;
  double rate_pps = 1.0;
  std::uint32_t payload = 512;  // bytes, accounting only
  std::optional<SimTime> stop_at;
  TrafficPattern pattern = TrafficPattern::Cbr;

  bool operator==(const Flow&) const = default;
};

struct NodeSpec {
  NodeId id;
  std::string label;
  Position position;
  NodeParams params;
  double capacity_pps = 1000.0;
  std::uint32_t queue_len_max = 50;

  bool operator==(const NodeSpec&) const = default;
};

/// Index values injected into one node's table, for fixtures that start from a
/// fixed routing-table snapshot.
struct IndexSnapshot {
  NodeId observer;
  std::vector<std::pair<NodeId, std::uint32_t>> values;

  bool operator==(const IndexSnapshot&) const = default;
};

struct ScenarioSpec {
  std::string name = "scenario";
  Protocol protocol = Protocol::CiAodv;
  std::uint64_t seed = 1;
  SimTime duration = from_ms(10000);

  // Per-node values used unless a node line overrides them.
  NodeParams defaults;
  double default_capacity_pps = 1000.0;
  std::uint32_t default_queue_len_max = 50;

  MediumParams medium;
  MobilityParams mobility;
  std::vector<NodeSpec> nodes;
  std::vector<Flow> flows;
  std::optional<IndexSnapshot> index_table;

  bool operator==(const ScenarioSpec&) const = default;

  NodeNames names() const;
  std::optional<NodeId> find(std::string_view label) const;
  /// Sets every node's route limit and the default.
  void set_route_limit(RouteLimit limit);
};

enum class ScenarioErrorKind { SyntaxError, UnknownNode, DuplicateLabel, BadParameter };

std::string_view to_string(ScenarioErrorKind k);

struct ScenarioIssue {
  ScenarioErrorKind kind = ScenarioErrorKind::SyntaxError;
  std::size_t line = 0;  // 1-based; 0 when the problem is the file as a whole
  std::string message;

  bool operator==(const ScenarioIssue&) const = default;
};

/// Every problem found in a scenario text, each with its location.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<ScenarioIssue> issues);
  const std::vector<ScenarioIssue>& issues() const { return issues_; }

 private:
  std::vector<ScenarioIssue> issues_;
};

ScenarioSpec parse_scenario(std::string_view text);
std::string render_scenario(const ScenarioSpec& spec);
/// Fingerprint of the scenario independent of the protocol it is run with.
std::uint64_t scenario_hash(const ScenarioSpec& spec);

class GenerationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenParams {
  std::uint32_t min_nodes = 2;
  std::uint32_t max_nodes = 30;
  std::uint32_t min_flows = 1;
  std::uint32_t max_flows = 10;
  double range = 100.0;
  // Nominal expected degree; sets the square side to range * sqrt((n-1) pi / degree).
  double degree = 16.0;
  std::vector<RouteLimit> limits = {RouteLimit::at_most(1), RouteLimit::at_most(2), RouteLimit::at_most(3)};
  bool mobility = true;
  double speed_min = 1.0;
  double speed_max = 5.0;
  SimTime duration = from_ms(20000);
  double loss_rate = 0.0;
  std::uint32_t max_attempts = 1000;
  Protocol protocol = Protocol::CiAodv;
};

/// Connected placement (rejection sampled) with flows among distinct pairs.
/// Throws GenerationFailed when no connected placement is found in max_attempts.
ScenarioSpec random_scenario(const GenParams& params, std::uint64_t seed);

/// True iff the unit-disk graph over `positions` is connected.
bool is_connected(const std::vector<Position>& positions, double range);

}  // namespace ciaodv
