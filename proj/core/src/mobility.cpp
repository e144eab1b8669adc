#include "ciaodv/mobility.hpp"

#include <algorithm>
#include <cmath>

namespace ciaodv {

std::string_view to_string(MobilityModel m) {
  return m == MobilityModel::Static ? "static" : "waypoint";
}

std::optional<MobilityModel> parse_mobility_model(std::string_view s) {
  if (s == "static") return MobilityModel::Static;
  if (s == "waypoint") return MobilityModel::RandomWaypoint;
  return std::nullopt;
}

Position departed_position(NodeId n) {
  return Position{1e12 * (static_cast<double>(n.value) + 1.0), -1e12};
}

Mobility::Mobility(MobilityParams params, const std::vector<Position>& initial, Rng rng)
    : params_(std::move(params)), rng_(rng), state_(initial.size()) {
  if (params_.area_w > 0 && params_.area_h > 0) {
    x1_ = params_.area_w;
    y1_ = params_.area_h;
  } else if (!initial.empty()) {
    x0_ = x1_ = initial[0].x;
    y0_ = y1_ = initial[0].y;
    for (const auto& p : initial) {
      x0_ = std::min(x0_, p.x);
      x1_ = std::max(x1_, p.x);
      y0_ = std::min(y0_, p.y);
      y1_ = std::max(y1_, p.y);
    }
  }
  if (moving()) {
    for (auto& w : state_) w.pause_left = params_.pause;
  }
}

bool Mobility::moving() const {
  return params_.model == MobilityModel::RandomWaypoint && params_.speed_max > 0;
}

void Mobility::pick_waypoint(Walker& w) {
  w.target = Position{rng_.uniform(x0_, x1_), rng_.uniform(y0_, y1_)};
  w.speed = rng_.uniform(params_.speed_min, params_.speed_max);
  w.has_target = true;
}

void Mobility::step(SimTime dt, std::vector<Position>& positions) {
  if (!moving()) return;
  for (std::size_t i = 0; i < state_.size(); ++i) {
    Walker& w = state_[i];
    if (w.departed) continue;
    if (w.pause_left > 0) {
      w.pause_left = std::max<SimTime>(0, w.pause_left - dt);
      continue;
    }
    if (!w.has_target) pick_waypoint(w);
    Position& p = positions[i];
    const double budget = w.speed * static_cast<double>(dt) / kMicrosPerSecond;
    const double d = distance(p, w.target);
    if (d <= budget) {
      p = w.target;
      w.has_target = false;
      w.pause_left = params_.pause;
    } else if (budget > 0) {
      p.x += (w.target.x - p.x) * budget / d;
      p.y += (w.target.y - p.y) * budget / d;
    }
  }
}

void Mobility::depart(NodeId n, std::vector<Position>& positions) {
  state_.at(n.value).departed = true;
  positions.at(n.value) = departed_position(n);
}

}  // namespace ciaodv
