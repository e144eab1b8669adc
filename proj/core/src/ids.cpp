#include "ciaodv/ids.hpp"

#include <stdexcept>

namespace ciaodv {

NodeNames::NodeNames(std::vector<std::string> labels) {
  for (auto& l : labels) add(std::move(l));
}

NodeId NodeNames::add(std::string label) {
  if (ids_.contains(label)) throw std::invalid_argument("duplicate node label: " + label);
  const NodeId id{static_cast<std::uint32_t>(labels_.size())};
  ids_.emplace(label, id);
  labels_.push_back(std::move(label));
  return id;
}

const std::string& NodeNames::label(NodeId id) const {
  return labels_.at(id.value);
}

std::optional<NodeId> NodeNames::find(std::string_view label) const {
  const auto it = ids_.find(std::string(label));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

bool is_valid_label(std::string_view label) {
  if (label.empty() || label == "-" || label == "*") return false;
  for (char c : label) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

}  // namespace ciaodv
