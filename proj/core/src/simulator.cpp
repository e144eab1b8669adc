#include "ciaodv/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "ciaodv/codec.hpp"
#include "ciaodv/text.hpp"

namespace ciaodv {

namespace {

std::vector<Position> initial_positions(const ScenarioSpec& spec) {
  std::vector<Position> out;
  out.reserve(spec.nodes.size());
  for (const auto& n : spec.nodes) out.push_back(n.position);
  return out;
}

std::shared_ptr<const RouteLimitTable> limit_table(const ScenarioSpec& spec) {
  std::vector<RouteLimit> limits;
  limits.reserve(spec.nodes.size());
  for (const auto& n : spec.nodes) limits.push_back(n.params.route_limit);
  return std::make_shared<const RouteLimitTable>(std::move(limits));
}

FieldList with(FieldList head, FieldList tail) {
  head.insert(head.end(), std::make_move_iterator(tail.begin()), std::make_move_iterator(tail.end()));
  return head;
}

}  // namespace

Simulator::Simulator(const ScenarioSpec& spec)
    : spec_(spec),
      names_(spec.names()),
      medium_(spec.medium, initial_positions(spec)),
      mobility_(spec.mobility, initial_positions(spec), make_stream(spec.seed, Stream::Mobility)),
      loss_rng_(make_stream(spec.seed, Stream::Loss)) {
  auto limits = limit_table(spec_);
  trace_.header.scenario_hash = scenario_hash(spec_);
  trace_.header.seed = spec_.seed;
  trace_.header.protocol = spec_.protocol;
  trace_.header.labels = names_.labels();
  trace_.header.scenario = render_scenario(spec_);

  for (const auto& n : spec_.nodes) {
    nodes_.push_back(make_node(n.id, spec_.protocol, n.params, limits));
    queues_.emplace_back(n.capacity_pps, n.queue_len_max);
    last_departure_.push_back(0);
    record(TraceKind::Init, n.id, std::nullopt, {{"limit", n.params.route_limit.to_string()}});
  }
  if (spec_.index_table) {
    NodeState& obs = nodes_.at(spec_.index_table->observer.value);
    for (const auto& [node, idx] : spec_.index_table->values) obs.index_table.set(node, idx);
  }

  Rng hello = make_stream(spec_.seed, Stream::Hello);
  for (const auto& n : spec_.nodes) {
    const SimTime interval = n.params.hello_interval;
    const SimTime offset = interval > 1 ? 1 + static_cast<SimTime>(hello.below(static_cast<std::uint64_t>(interval - 1))) : 1;
    schedule(offset, ev::TimerFired{n.id, TimerKey{TimerKind::Hello, n.id, 0}});
  }
  for (std::uint32_t i = 0; i < spec_.flows.size(); ++i) {
    const Flow& f = spec_.flows[i];
    flows_.push_back(FlowRuntime{false, 0, 0, make_stream(spec_.seed, Stream::Traffic, i)});
    schedule(f.start_at, ev::TrafficStart{i});
    if (f.stop_at) schedule(*f.stop_at, ev::TrafficStop{i});
  }
  for (const auto& d : spec_.mobility.departures) schedule(d.at, ev::Departure{d.node});
  if (mobility_.moving()) schedule(spec_.mobility.step, ev::MobilityStep{});
}

void Simulator::schedule(SimTime at, EventKind kind) { events_.schedule(at, std::move(kind)); }

const SimTrace& Simulator::run_until(SimTime t_end) {
  while (!events_.empty() && events_.next_time() <= t_end) {
    Event e = events_.pop();
    dispatch(e);
  }
  events_.advance_to(t_end);
  trace_.header.end = std::max(trace_.header.end, t_end);
  return trace_;
}

void Simulator::record(TraceKind kind, NodeId node, std::optional<MessageKind> msg, FieldList fields) {
  trace_.events.push_back(TraceEvent{now(), kind, node, msg, std::move(fields)});
}

FieldList Simulator::packet_fields(const DataPacket& p) const {
  return {{"flow", std::to_string(p.flow)}, {"seq", std::to_string(p.seq)}};
}

std::vector<NodeId> Simulator::broadcast_delivery(NodeId from, const ControlMessage& msg) {
  const auto kind = kind_of(msg);
  const auto in_range = medium_.neighbors_of(from);
  record(TraceKind::Tx, from, kind,
         with({{"to", "*"}, {"fanout", std::to_string(in_range.size())}}, encode_fields(msg, names_)));
  std::vector<NodeId> receivers;
  for (NodeId r : in_range) {
    if (loss_rng_.bernoulli(medium_.params().loss_rate)) {
      record(TraceKind::Lost, from, kind, {{"to", names_.label(r)}});
      continue;
    }
    schedule(now() + medium_.params().per_hop_latency, ev::MsgDelivery{r, from, msg});
    receivers.push_back(r);
  }
  return receivers;
}

void Simulator::unicast(NodeId from, NodeId to, const ControlMessage& msg) {
  const auto kind = kind_of(msg);
  record(TraceKind::Tx, from, kind, with({{"to", names_.label(to)}, {"fanout", "1"}}, encode_fields(msg, names_)));
  if (medium_.in_range(from, to)) {
    schedule(now() + medium_.params().per_hop_latency, ev::MsgDelivery{to, from, msg});
  } else {
    record(TraceKind::Ufail, from, kind, {{"to", names_.label(to)}});
    schedule(now(), ev::LinkFailure{from, to, msg});
  }
}

void Simulator::step_mobility(SimTime dt) { mobility_.step(dt, medium_.positions()); }

ForwardResult Simulator::forward_data(NodeId node, const DataPacket& packet, NodeId next_hop) {
  NodeQueue& q = queues_.at(node.value);
  if (!q.enqueue(QueuedPacket{packet, next_hop})) {
    ++dropped_;
    record(TraceKind::Ddrop, node, std::nullopt,
           with(packet_fields(packet), {{"reason", std::string(to_string(DropReason::QueueFull))}}));
    return ForwardResult{false, 0, DropReason::QueueFull};
  }
  SimTime& last = last_departure_[node.value];
  last = std::max(now(), last) + q.service_time();
  schedule(last, ev::ServiceDone{node});
  return ForwardResult{true, last, std::nullopt};
}

void Simulator::apply(NodeId n, Transition t) {
  nodes_[n.value] = std::move(t.state);
  for (auto& a : t.actions) perform(n, a);
}

void Simulator::perform(NodeId n, Action& action) {
  std::visit(
      [&](auto& a) {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, Broadcast>) {
          broadcast_delivery(n, a.msg);
        } else if constexpr (std::is_same_v<A, Unicast>) {
          unicast(n, a.to, a.msg);
        } else if constexpr (std::is_same_v<A, EstablishRoute>) {
          live_[a.route] = a.path;
          record(TraceKind::Estab, n, std::nullopt,
                 {{"route", encode_route_id(a.route, names_)},
                  {"dest", names_.label(a.path.back())},
                  {"path", encode_node_list(a.path, names_)}});
        } else if constexpr (std::is_same_v<A, RejectRoute>) {
          record(TraceKind::Reject, n, std::nullopt,
                 {{"dest", names_.label(a.dest)},
                  {"violators", encode_node_list({a.violators.begin(), a.violators.end()}, names_)},
                  {"path", encode_node_list(a.path, names_)}});
        } else if constexpr (std::is_same_v<A, Admitted>) {
          record(TraceKind::Admit, n, std::nullopt,
                 {{"dest", names_.label(a.dest)}, {"path", encode_path_indices(a.path_indices, names_)}});
        } else if constexpr (std::is_same_v<A, DiscoveryStarted>) {
          record(TraceKind::Disc, n, std::nullopt,
                 {{"dest", names_.label(a.dest)},
                  {"attempt", std::to_string(a.attempt)},
                  {"excluded", encode_node_list({a.excluded.begin(), a.excluded.end()}, names_)}});
        } else if constexpr (std::is_same_v<A, DiscoveryFailed>) {
          record(TraceKind::Fail, n, std::nullopt,
                 {{"dest", names_.label(a.dest)}, {"reason", std::string(to_string(a.reason))}});
        } else if constexpr (std::is_same_v<A, RouteReleased>) {
          if (a.route.source == n) live_.erase(a.route);
          record(TraceKind::Release, n, std::nullopt,
                 {{"route", encode_route_id(a.route, names_)}, {"cause", std::string(to_string(a.cause))}});
        } else if constexpr (std::is_same_v<A, DeliverData>) {
          ++delivered_;
          record(TraceKind::Drecv, n, std::nullopt,
                 with(packet_fields(a.packet), {{"born", text::format_ms(a.packet.created_at)}}));
        } else if constexpr (std::is_same_v<A, ForwardData>) {
          forward_data(n, a.packet, a.next_hop);
        } else if constexpr (std::is_same_v<A, DropData>) {
          ++dropped_;
          record(TraceKind::Ddrop, n, std::nullopt,
                 with(packet_fields(a.packet), {{"reason", std::string(to_string(a.reason))}}));
        } else if constexpr (std::is_same_v<A, SetTimer>) {
          schedule(a.at, ev::TimerFired{n, a.key});
        } else if constexpr (std::is_same_v<A, IndexChanged>) {
          record(TraceKind::Index, n, std::nullopt, {{"value", std::to_string(a.new_index)}});
        }
      },
      action);
}

void Simulator::schedule_next_packet(std::uint32_t i) {
  const Flow& f = spec_.flows[i];
  FlowRuntime& rt = flows_[i];
  SimTime at;
  if (f.pattern == TrafficPattern::Cbr) {
    at = f.start_at + static_cast<SimTime>(std::llround(static_cast<double>(rt.generated) * kMicrosPerSecond / f.rate_pps));
    at = std::max(at, now());
  } else {
    at = now() + std::max<SimTime>(1, std::llround(rt.rng.exponential(f.rate_pps) * kMicrosPerSecond));
  }
  schedule(at, ev::DataGenerate{i});
}

void Simulator::dispatch(Event& e) {
  std::visit(
      [&](auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ev::MsgDelivery>) {
          record(TraceKind::Rx, k.to, kind_of(k.msg), {{"from", names_.label(k.from)}});
          apply(k.to, receive_control(std::move(nodes_[k.to.value]), k.msg, k.from, now()));
        } else if constexpr (std::is_same_v<K, ev::DataDelivery>) {
          apply(k.to, receive_data(std::move(nodes_[k.to.value]), std::move(k.packet), k.from, now()));
        } else if constexpr (std::is_same_v<K, ev::TimerFired>) {
          apply(k.node, handle_timer(std::move(nodes_[k.node.value]), k.key, now()));
        } else if constexpr (std::is_same_v<K, ev::MobilityStep>) {
          step_mobility(spec_.mobility.step);
          schedule(now() + spec_.mobility.step, ev::MobilityStep{});
        } else if constexpr (std::is_same_v<K, ev::TrafficStart>) {
          const Flow& f = spec_.flows[k.flow];
          flows_[k.flow].active = true;
          record(TraceKind::Fstart, f.src, std::nullopt,
                 {{"flow", std::to_string(k.flow)}, {"dest", names_.label(f.dst)}});
          apply(f.src, start_flow(std::move(nodes_[f.src.value]), f.dst, now()));
          schedule_next_packet(k.flow);
        } else if constexpr (std::is_same_v<K, ev::TrafficStop>) {
          const Flow& f = spec_.flows[k.flow];
          flows_[k.flow].active = false;
          record(TraceKind::Fstop, f.src, std::nullopt,
                 {{"flow", std::to_string(k.flow)}, {"dest", names_.label(f.dst)}});
          apply(f.src, stop_flow(std::move(nodes_[f.src.value]), f.dst, now()));
        } else if constexpr (std::is_same_v<K, ev::DataGenerate>) {
          const Flow& f = spec_.flows[k.flow];
          FlowRuntime& rt = flows_[k.flow];
          if (!rt.active) return;
          DataPacket p{k.flow, rt.next_seq++, f.src, f.dst, now(), f.payload};
          ++rt.generated;
          ++generated_;
          record(TraceKind::Dgen, f.src, std::nullopt,
                 with(packet_fields(p), {{"dest", names_.label(f.dst)}}));
          apply(f.src, submit_data(std::move(nodes_[f.src.value]), std::move(p), now()));
          schedule_next_packet(k.flow);
        } else if constexpr (std::is_same_v<K, ev::ServiceDone>) {
          QueuedPacket qp = queues_[k.node.value].pop();
          if (medium_.in_range(k.node, qp.next_hop)) {
            record(TraceKind::Dfwd, k.node, std::nullopt,
                   with(packet_fields(qp.packet), {{"to", names_.label(qp.next_hop)}}));
            schedule(now() + medium_.params().per_hop_latency, ev::DataDelivery{qp.next_hop, k.node, qp.packet});
          } else {
            record(TraceKind::Ufail, k.node, std::nullopt,
                   with(packet_fields(qp.packet), {{"to", names_.label(qp.next_hop)}}));
            schedule(now(), ev::LinkFailure{k.node, qp.next_hop, qp.packet});
          }
        } else if constexpr (std::is_same_v<K, ev::LinkFailure>) {
          apply(k.node, handle_link_failure(std::move(nodes_[k.node.value]), k.neighbor, k.undelivered, now()));
        } else if constexpr (std::is_same_v<K, ev::Departure>) {
          record(TraceKind::Depart, k.node, std::nullopt, {});
          mobility_.depart(k.node, medium_.positions());
        }
      },
      e.kind);
}

SimTrace run_scenario(const ScenarioSpec& spec) {
  Simulator sim(spec);
  return sim.run_until(spec.duration);
}

}  // namespace ciaodv
