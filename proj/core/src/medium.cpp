#include "ciaodv/medium.hpp"

#include <cmath>

namespace ciaodv {

double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

// Squared differences are exact under operand swap, so the relation is symmetric.
bool within(Position a, Position b, double range) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= range * range;
}

}  // namespace

Medium::Medium(MediumParams params, std::vector<Position> positions)
    : params_(params), positions_(std::move(positions)) {}

bool Medium::in_range(NodeId a, NodeId b) const {
  return a != b && within(position(a), position(b), params_.range);
}

std::vector<NodeId> Medium::neighbors_of(NodeId n) const {
  std::vector<NodeId> out;
  const Position p = position(n);
  for (std::uint32_t i = 0; i < positions_.size(); ++i) {
    if (i != n.value && within(p, positions_[i], params_.range)) out.push_back(NodeId{i});
  }
  return out;
}

}  // namespace ciaodv
