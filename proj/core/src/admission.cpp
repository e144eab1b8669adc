#include "ciaodv/admission.hpp"

#include <algorithm>

#include "ciaodv/text.hpp"

namespace ciaodv {

std::string RouteLimit::to_string() const {
  return max_ ? std::to_string(*max_) : std::string("unlimited");
}

std::optional<RouteLimit> RouteLimit::parse(std::string_view s) {
  if (s == "unlimited") return unlimited();
  const auto v = text::parse_uint(s);
  if (!v || *v == 0 || *v > 0xffffffffULL) return std::nullopt;
  return at_most(static_cast<std::uint32_t>(*v));
}

AdmissionResult admission_check(std::span<const PathIndex> path_indices, const RouteLimitTable& limits) {
  Reject reject;
  for (const auto& [node, index] : path_indices) {
    if (!limits.limit(node).admits_another(index)) reject.violators.insert(node);
  }
  if (reject.violators.empty()) return Admit{};
  return reject;
}

bool path_is_simple(std::span<const NodeId> path) {
  std::vector<NodeId> sorted(path.begin(), path.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

}  // namespace ciaodv
