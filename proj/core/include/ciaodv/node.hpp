#pragma once

// Per-node AODV state machine with connection-index admission.
//
// Every operation is a pure transition: it takes the node state by value,
// the input and the current virtual time, and returns the successor state
// together with the actions the environment must carry out. Nothing here
// touches a clock, a socket or a random source.

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ciaodv/admission.hpp"
#include "ciaodv/ids.hpp"
#include "ciaodv/messages.hpp"
#include "ciaodv/route_entry.hpp"
#include "ciaodv/seqno.hpp"
#include "ciaodv/time.hpp"

namespace ciaodv {

enum class Protocol { Baseline, CiAodv };

std::string_view to_string(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view s);

struct NodeParams {
  RouteLimit route_limit = RouteLimit::unlimited();
  SimTime hello_interval = from_ms(1000);
  std::uint32_t allowed_hello_loss = 2;
  SimTime active_route_timeout = from_ms(10000);
  std::uint32_t rreq_retries = 2;
  SimTime rreq_retry_wait = from_ms(1000);
  // How long the source collects replies before deciding.
  SimTime accept_window = from_ms(40);
  // Packets held at the source while a route is being discovered.
  std::uint32_t source_buffer = 64;
  // Nodes at their limit stop forwarding requests (off: rejection happens at the source only).
  bool prune_at_limit = false;

  bool operator==(const NodeParams&) const = default;
};

enum class DropReason { QueueFull, NoRoute, LinkBroken, BufferFull, AdmissionRejected, FlowStopped };
std::string_view to_string(DropReason r);
std::optional<DropReason> parse_drop_reason(std::string_view s);

enum class FailureReason { NoRoute, AdmissionRejected };
std::string_view to_string(FailureReason r);
std::optional<FailureReason> parse_failure_reason(std::string_view s);

enum class TimerKind { Hello, RreqRetry, AcceptWindow };

struct TimerKey {
  TimerKind kind = TimerKind::Hello;
  NodeId dest;
  std::uint32_t rreq_id = 0;

  auto operator<=>(const TimerKey&) const = default;
};

struct Candidate {
  Rrep reply;
  NodeId from;
  SimTime arrived_at = 0;

  bool operator==(const Candidate&) const = default;
};

struct PendingDiscovery {
  NodeId dest;
  std::uint32_t attempt = 1;
  std::uint32_t rreq_id = 0;
  std::set<NodeId> excluded;
  SimTime started_at = 0;
  std::optional<Candidate> best_reply;
  bool rejected = false;  // some attempt of this request failed admission

  bool operator==(const PendingDiscovery&) const = default;
};

/// A route this node has been told to count, with the full path it belongs to.
struct CarriedRoute {
  RouteId id;
  std::vector<NodeId> path;

  std::optional<NodeId> upstream(NodeId me) const;
  std::optional<NodeId> downstream(NodeId me) const;
  NodeId dest() const { return path.back(); }

  bool operator==(const CarriedRoute&) const = default;
};

enum class ConnectionPhase { Idle, Discovering, Active, Failed };

/// Source-side view of traffic to one destination.
struct Connection {
  ConnectionPhase phase = ConnectionPhase::Idle;
  std::uint32_t demand = 0;  // flows currently wanting this destination
  std::optional<RouteId> route;
  std::optional<FailureReason> failure;
  std::deque<DataPacket> buffer;
  // Carried over from the discovery that produced `route`, so an activation
  // refusal continues the same request instead of starting over.
  std::uint32_t attempts_used = 0;
  std::set<NodeId> excluded;
  bool rejected = false;

  bool operator==(const Connection&) const = default;
};

/// Last-heard connection index per node; the owner's own entry is exact.
class ConnectionIndexTable {
 public:
  void set(NodeId node, std::uint32_t index) { entries_[node] = index; }
  std::optional<std::uint32_t> get(NodeId node) const;
  const std::map<NodeId, std::uint32_t>& entries() const { return entries_; }

  bool operator==(const ConnectionIndexTable&) const = default;

 private:
  std::map<NodeId, std::uint32_t> entries_;
};

struct NodeState {
  NodeId me;
  Protocol protocol = Protocol::CiAodv;
  NodeParams params;
  std::shared_ptr<const RouteLimitTable> limits;

  SeqNo own_seqno;
  std::uint32_t next_rreq_id = 1;
  std::uint32_t next_route_serial = 1;

  std::map<NodeId, RouteEntry> routing_table;
  std::map<NodeId, SimTime> neighbors;  // last time each neighbor was heard
  ConnectionIndexTable index_table;
  std::uint32_t own_index = 0;
  std::map<std::pair<NodeId, std::uint32_t>, SimTime> rreq_seen;
  std::map<NodeId, PendingDiscovery> pending;
  std::map<RouteId, CarriedRoute> carried;
  std::set<RouteId> active_routes;  // routes originated here
  std::map<NodeId, Connection> connections;
  // Teardowns that could not be delivered; sent when the neighbor is heard again.
  std::map<NodeId, std::set<RouteId>> owed_teardowns;
  std::map<NodeId, SimTime> rerr_sent_at;

  bool operator==(const NodeState&) const = default;
};

NodeState make_node(NodeId me, Protocol protocol, NodeParams params,
                    std::shared_ptr<const RouteLimitTable> limits);

// ---- actions ---------------------------------------------------------------

struct Broadcast {
  ControlMessage msg;
  bool operator==(const Broadcast&) const = default;
};
struct Unicast {
  NodeId to;
  ControlMessage msg;
  bool operator==(const Unicast&) const = default;
};
struct EstablishRoute {
  RouteId route;
  std::vector<NodeId> path;
  bool operator==(const EstablishRoute&) const = default;
};
struct RejectRoute {
  NodeId dest;
  std::set<NodeId> violators;
  std::vector<NodeId> path;
  bool operator==(const RejectRoute&) const = default;
};
struct Admitted {
  NodeId dest;
  std::vector<PathIndex> path_indices;
  bool operator==(const Admitted&) const = default;
};
struct DiscoveryStarted {
  NodeId dest;
  std::uint32_t attempt = 1;
  std::set<NodeId> excluded;
  bool operator==(const DiscoveryStarted&) const = default;
};
struct DiscoveryFailed {
  NodeId dest;
  FailureReason reason = FailureReason::NoRoute;
  bool operator==(const DiscoveryFailed&) const = default;
};
struct RouteReleased {
  RouteId route;
  TeardownReason cause = TeardownReason::Stop;
  bool operator==(const RouteReleased&) const = default;
};
struct DeliverData {
  DataPacket packet;
  bool operator==(const DeliverData&) const = default;
};
struct ForwardData {
  DataPacket packet;
  NodeId next_hop;
  bool operator==(const ForwardData&) const = default;
};
struct DropData {
  DataPacket packet;
  DropReason reason = DropReason::NoRoute;
  bool operator==(const DropData&) const = default;
};
struct SetTimer {
  TimerKey key;
  SimTime at = 0;
  bool operator==(const SetTimer&) const = default;
};
struct IndexChanged {
  std::uint32_t new_index = 0;
  bool operator==(const IndexChanged&) const = default;
};

using Action = std::variant<Broadcast, Unicast, EstablishRoute, RejectRoute, Admitted, DiscoveryStarted,
                            DiscoveryFailed, RouteReleased, DeliverData, ForwardData, DropData, SetTimer,
                            IndexChanged>;

/// Non-fatal outcomes a caller may want to distinguish from a plain success.
enum class Signal { Ok, Dropped, AlreadyPending, RouteExists, UnknownRoute, StaleReply };

struct Transition {
  NodeState state;
  std::vector<Action> actions;
  Signal signal = Signal::Ok;
};

// ---- route discovery ---------------------------------------------------------

/// Floods a fresh RREQ for `dest`. Throws std::invalid_argument if dest is this node.
Transition originate_discovery(NodeState state, NodeId dest, SimTime now);
Transition handle_rreq(NodeState state, const Rreq& rreq, NodeId from, SimTime now);
Transition handle_rrep(NodeState state, const Rrep& rrep, NodeId from, SimTime now);
/// Ends the reply-collection window at the source and runs admission.
Transition close_accept_window(NodeState state, NodeId dest, std::uint32_t rreq_id, SimTime now);

// ---- admission bookkeeping --------------------------------------------------

Transition commit_route(NodeState state, RouteId route, const std::vector<NodeId>& path, SimTime now);
Transition handle_activate(NodeState state, const Activate& msg, NodeId from, SimTime now);
Transition teardown_route(NodeState state, RouteId route, SimTime now);
Transition handle_teardown(NodeState state, const Teardown& msg, NodeId from, SimTime now);

// ---- neighbor sensing and maintenance ---------------------------------------

Transition emit_hello(NodeState state, SimTime now);
NodeState handle_hello(NodeState state, const Hello& hello, SimTime now);
Transition check_neighbor_liveness(NodeState state, SimTime now);
Transition handle_rerr(NodeState state, const Rerr& rerr, NodeId from, SimTime now);
/// A unicast to `neighbor` could not be delivered. `undelivered` is what was lost.
Transition handle_link_failure(NodeState state, NodeId neighbor,
                               const std::variant<std::monostate, ControlMessage, DataPacket>& undelivered,
                               SimTime now);

// ---- data plane and traffic -------------------------------------------------

Transition start_flow(NodeState state, NodeId dest, SimTime now);
Transition stop_flow(NodeState state, NodeId dest, SimTime now);
/// A packet produced by a local application.
Transition submit_data(NodeState state, DataPacket packet, SimTime now);
/// A packet received from `from`.
Transition receive_data(NodeState state, DataPacket packet, NodeId from, SimTime now);

// ---- dispatch ----------------------------------------------------------------

Transition receive_control(NodeState state, const ControlMessage& msg, NodeId from, SimTime now);
Transition handle_timer(NodeState state, TimerKey key, SimTime now);

std::optional<NodeId> next_hop_for(const NodeState& state, NodeId dest, SimTime now);

}  // namespace ciaodv
