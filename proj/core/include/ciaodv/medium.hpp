#pragma once

#include <vector>

#include "ciaodv/ids.hpp"
#include "ciaodv/time.hpp"

namespace ciaodv {

struct Position {
  double x = 0;
  double y = 0;

  bool operator==(const Position&) const = default;
};

double distance(Position a, Position b);

struct MediumParams {
  double range = 100.0;  // meters
  SimTime per_hop_latency = from_ms(2);
  double loss_rate = 0.0;  // per receiver, broadcasts only

  bool operator==(const MediumParams&) const = default;
};

/// Unit-disk radio: a transmission reaches every node within `range`.
class Medium {
 public:
  Medium(MediumParams params, std::vector<Position> positions);

  const MediumParams& params() const { return params_; }
  const std::vector<Position>& positions() const { return positions_; }
  std::vector<Position>& positions() { return positions_; }
  Position position(NodeId n) const { return positions_.at(n.value); }
  void set_position(NodeId n, Position p) { positions_.at(n.value) = p; }
  std::size_t size() const { return positions_.size(); }

  bool in_range(NodeId a, NodeId b) const;
  /// Nodes in range of `n`, excluding `n`, in id order.
  std::vector<NodeId> neighbors_of(NodeId n) const;

 private:
  MediumParams params_;
  std::vector<Position> positions_;
};

}  // namespace ciaodv
