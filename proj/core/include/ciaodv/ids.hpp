#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ciaodv {

/// Dense node identifier, an index into the scenario's node list.
struct NodeId {
  std::uint32_t value = 0;

  auto operator<=>(const NodeId&) const = default;
};

/// An end-to-end route admitted by its source. Serials are per source and
/// never reused, so a RouteId names one connection for the whole run.
struct RouteId {
  NodeId source;
  std::uint32_t serial = 0;

  auto operator<=>(const RouteId&) const = default;
};

/// Bidirectional label table ("S", "N2", ...) for one scenario.
class NodeNames {
 public:
  NodeNames() = default;
  explicit NodeNames(std::vector<std::string> labels);

  NodeId add(std::string label);
  const std::string& label(NodeId id) const;
  std::optional<NodeId> find(std::string_view label) const;
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const NodeNames& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> ids_;
};

/// Labels must be non-empty and free of the separators used by the text formats.
bool is_valid_label(std::string_view label);

}  // namespace ciaodv

template <>
struct std::hash<ciaodv::NodeId> {
  std::size_t operator()(const ciaodv::NodeId& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
