#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ciaodv/ids.hpp"
#include "ciaodv/medium.hpp"
#include "ciaodv/rng.hpp"
#include "ciaodv/time.hpp"

namespace ciaodv {

enum class MobilityModel { Static, RandomWaypoint };

std::string_view to_string(MobilityModel m);
std::optional<MobilityModel> parse_mobility_model(std::string_view s);

/// Node leaves the network at `at`: it is moved out of everyone's range.
struct Departure {
  NodeId node;
  SimTime at = 0;

  bool operator==(const Departure&) const = default;
};

struct MobilityParams {
  MobilityModel model = MobilityModel::Static;
  SimTime step = from_ms(100);
  double speed_min = 0.0;  // m/s
  double speed_max = 0.0;
  SimTime pause = 0;
  // Waypoints are drawn in [0, area_w] x [0, area_h]; zero means the
  // bounding box of the initial placement.
  double area_w = 0.0;
  double area_h = 0.0;
  std::vector<Departure> departures;

  bool operator==(const MobilityParams&) const = default;
};

/// Where a departed node is parked: far from every other node and every other parking spot.
Position departed_position(NodeId n);

class Mobility {
 public:
  Mobility(MobilityParams params, const std::vector<Position>& initial, Rng rng);

  const MobilityParams& params() const { return params_; }
  bool moving() const;

  /// Advances every non-departed node by `dt`.
  void step(SimTime dt, std::vector<Position>& positions);
  void depart(NodeId n, std::vector<Position>& positions);
  bool departed(NodeId n) const { return state_.at(n.value).departed; }

 private:
  struct Walker {
    Position target;
    double speed = 0;
    SimTime pause_left = 0;
    bool has_target = false;
    bool departed = false;
  };

  void pick_waypoint(Walker& w);

  MobilityParams params_;
  Rng rng_;
  double x0_ = 0, y0_ = 0, x1_ = 0, y1_ = 0;
  std::vector<Walker> state_;
};

}  // namespace ciaodv
