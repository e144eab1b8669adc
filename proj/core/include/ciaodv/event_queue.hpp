#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ciaodv/ids.hpp"
#include "ciaodv/messages.hpp"
#include "ciaodv/node.hpp"
#include "ciaodv/time.hpp"

namespace ciaodv {

class PastEvent : public std::logic_error {
 public:
  PastEvent(SimTime at, SimTime clock);
};

namespace ev {

struct MsgDelivery {
  NodeId to;
  NodeId from;
  ControlMessage msg;
};
struct DataDelivery {
  NodeId to;
  NodeId from;
  DataPacket packet;
};
struct TimerFired {
  NodeId node;
  TimerKey key;
};
struct MobilityStep {};
struct TrafficStart {
  std::uint32_t flow = 0;
};
struct TrafficStop {
  std::uint32_t flow = 0;
};
struct DataGenerate {
  std::uint32_t flow = 0;
};
struct ServiceDone {
  NodeId node;
};
/// A unicast found its receiver out of range.
struct LinkFailure {
  NodeId node;
  NodeId neighbor;
  std::variant<std::monostate, ControlMessage, DataPacket> undelivered;
};
struct Departure {
  NodeId node;
};

}  // namespace ev

using EventKind = std::variant<ev::MsgDelivery, ev::DataDelivery, ev::TimerFired, ev::MobilityStep,
                               ev::TrafficStart, ev::TrafficStop, ev::DataGenerate, ev::ServiceDone,
                               ev::LinkFailure, ev::Departure>;

struct Event {
  SimTime at = 0;
  std::uint64_t seq = 0;
  EventKind kind;
};

/// Min-queue on (at, seq); seq is assigned at scheduling time, so equal
/// times run in scheduling order.
class EventQueue {
 public:
  SimTime clock() const { return clock_; }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  SimTime next_time() const { return heap_.top().at; }

  /// Throws PastEvent if at < clock().
  void schedule(SimTime at, EventKind kind);
  /// Removes the earliest event and advances the clock to its time.
  Event pop();
  /// Moves the clock forward to `t` when no event is due before it.
  void advance_to(SimTime t);

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.at != b.at ? a.at > b.at : a.seq > b.seq;
    }
  };

  SimTime clock_ = 0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
};

}  // namespace ciaodv
