#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "ciaodv/event_queue.hpp"
#include "ciaodv/medium.hpp"
#include "ciaodv/mobility.hpp"
#include "ciaodv/node.hpp"
#include "ciaodv/node_queue.hpp"
#include "ciaodv/rng.hpp"
#include "ciaodv/scenario.hpp"
#include "ciaodv/trace.hpp"

namespace ciaodv {

struct ForwardResult {
  bool forwarded = false;
  SimTime departs_at = 0;                // valid when forwarded
  std::optional<DropReason> dropped;     // valid otherwise
};

/// One deterministic run of a scenario. Single-threaded; separate instances
/// share nothing.
class Simulator {
 public:
  explicit Simulator(const ScenarioSpec& spec);

  SimTime now() const { return events_.clock(); }
  const ScenarioSpec& scenario() const { return spec_; }
  const NodeNames& names() const { return names_; }
  const Medium& medium() const { return medium_; }
  const NodeState& node(NodeId n) const { return nodes_.at(n.value); }
  const SimTrace& trace() const { return trace_; }
  /// God-view registry: routes established and not yet released at their source.
  const std::map<RouteId, std::vector<NodeId>>& live_routes() const { return live_; }

  /// Throws PastEvent if at < now().
  void schedule(SimTime at, EventKind kind);
  /// Processes every event with time <= t_end and returns the trace so far.
  const SimTrace& run_until(SimTime t_end);

  /// Sends `msg` from `from` to every node in range; returns the receivers
  /// that will get a copy.
  std::vector<NodeId> broadcast_delivery(NodeId from, const ControlMessage& msg);
  void step_mobility(SimTime dt);
  /// Queues a packet at `node` for transmission to `next_hop`.
  ForwardResult forward_data(NodeId node, const DataPacket& packet, NodeId next_hop);

  /// Data packets generated and neither delivered nor dropped.
  std::uint64_t data_in_flight() const { return generated_ - delivered_ - dropped_; }

 private:
  struct FlowRuntime {
    bool active = false;
    std::uint64_t next_seq = 0;
    std::uint64_t generated = 0;
    Rng rng;
  };

  void dispatch(Event& e);
  void apply(NodeId n, Transition t);
  void perform(NodeId n, Action& a);
  void unicast(NodeId from, NodeId to, const ControlMessage& msg);
  void record(TraceKind kind, NodeId node, std::optional<MessageKind> msg, FieldList fields);
  void schedule_next_packet(std::uint32_t flow);
  FieldList packet_fields(const DataPacket& p) const;

  ScenarioSpec spec_;
  NodeNames names_;
  Medium medium_;
  Mobility mobility_;
  EventQueue events_;
  std::vector<NodeState> nodes_;
  std::vector<NodeQueue> queues_;
  std::vector<SimTime> last_departure_;
  std::vector<FlowRuntime> flows_;
  Rng loss_rng_;
  SimTrace trace_;
  std::map<RouteId, std::vector<NodeId>> live_;
  std::uint64_t generated_ = 0;
  std::uint64_t delivered_ = 0;
  std::uint64_t dropped_ = 0;
};

/// Runs `spec` for its full duration.
SimTrace run_scenario(const ScenarioSpec& spec);

}  // namespace ciaodv
