#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ciaodv/ids.hpp"
#include "ciaodv/messages.hpp"

namespace ciaodv {

/// Maximum number of simultaneous end-to-end routes a node may carry.
class RouteLimit {
 public:
  static constexpr RouteLimit unlimited() { return RouteLimit(); }
  static constexpr RouteLimit at_most(std::uint32_t n) { return RouteLimit(n); }

  constexpr bool is_unlimited() const { return !max_.has_value(); }
  constexpr std::uint32_t value() const { return *max_; }

  /// A node currently carrying `index` routes can take one more iff index < limit.
  constexpr bool admits_another(std::uint32_t index) const { return !max_ || index < *max_; }
  constexpr bool within(std::uint32_t index) const { return !max_ || index <= *max_; }

  std::string to_string() const;
  /// "unlimited" or a positive integer.
  static std::optional<RouteLimit> parse(std::string_view s);

  constexpr bool operator==(const RouteLimit&) const = default;

 private:
  constexpr RouteLimit() = default;
  constexpr explicit RouteLimit(std::uint32_t n) : max_(n) {}

  std::optional<std::uint32_t> max_;
};

/// Network-wide limits, known to every node beforehand. Unknown nodes are unlimited.
class RouteLimitTable {
 public:
  RouteLimitTable() = default;
  explicit RouteLimitTable(std::vector<RouteLimit> limits) : limits_(std::move(limits)) {}

  RouteLimit limit(NodeId node) const {
    return node.value < limits_.size() ? limits_[node.value] : RouteLimit::unlimited();
  }
  std::size_t size() const { return limits_.size(); }

  bool operator==(const RouteLimitTable&) const = default;

 private:
  std::vector<RouteLimit> limits_;
};

struct Admit {
  bool operator==(const Admit&) const = default;
};
struct Reject {
  std::set<NodeId> violators;

  bool operator==(const Reject&) const = default;
};
using AdmissionResult = std::variant<Admit, Reject>;

/// Source-side check of a candidate route: every listed node (endpoints
/// included) must be able to carry one more route. Pure.
AdmissionResult admission_check(std::span<const PathIndex> path_indices, const RouteLimitTable& limits);

/// True iff no node appears twice.
bool path_is_simple(std::span<const NodeId> path);

}  // namespace ciaodv
