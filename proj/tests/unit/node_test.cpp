#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <vector>

#include "ciaodv/node.hpp"

namespace ciaodv {
namespace {

template <class A>
std::vector<A> all(const Transition& t) {
  std::vector<A> out;
  for (const auto& a : t.actions)
    if (const auto* x = std::get_if<A>(&a)) out.push_back(*x);
  return out;
}

template <class A>
A only(const Transition& t) {
  auto v = all<A>(t);
  EXPECT_EQ(v.size(), 1u);
  return v.empty() ? A{} : v.front();
}

template <class M>
std::vector<M> broadcasts(const Transition& t) {
  std::vector<M> out;
  for (const auto& b : all<Broadcast>(t))
    if (const auto* m = std::get_if<M>(&b.msg)) out.push_back(*m);
  return out;
}

template <class M>
std::vector<std::pair<NodeId, M>> unicasts(const Transition& t) {
  std::vector<std::pair<NodeId, M>> out;
  for (const auto& u : all<Unicast>(t))
    if (const auto* m = std::get_if<M>(&u.msg)) out.emplace_back(u.to, *m);
  return out;
}

constexpr NodeId S{0}, N1{1}, N2{2}, N3{3}, D{4};

NodeState node(NodeId me, RouteLimit limit = RouteLimit::at_most(2), Protocol p = Protocol::CiAodv,
               std::size_t n = 16) {
  NodeParams params;
  params.route_limit = limit;
  auto limits = std::make_shared<const RouteLimitTable>(std::vector<RouteLimit>(n, limit));
  return make_node(me, p, params, limits);
}

Rreq rreq_from(NodeId origin, std::uint32_t id, NodeId dest, std::uint32_t hops = 0) {
  Rreq r;
  r.origin = origin;
  r.rreq_id = id;
  r.dest = dest;
  r.origin_seqno = SeqNo{1};
  r.hop_count = hops;
  return r;
}

// ---- discovery -----------------------------------------------------------------

TEST(OriginateDiscovery, BroadcastsFreshRequest) {
  NodeState s = node(S);
  const Transition t = originate_discovery(s, D, 1000);
  const auto rreqs = broadcasts<Rreq>(t);
  ASSERT_EQ(rreqs.size(), 1u);
  EXPECT_EQ(rreqs[0].origin, S);
  EXPECT_EQ(rreqs[0].dest, D);
  EXPECT_EQ(rreqs[0].hop_count, 0u);
  EXPECT_TRUE(rreqs[0].excluded.empty());
  EXPECT_EQ(t.state.own_seqno, SeqNo{1});
  EXPECT_TRUE(t.state.rreq_seen.contains({S, rreqs[0].rreq_id}));
  const auto timer = only<SetTimer>(t);
  EXPECT_EQ(timer.key.kind, TimerKind::RreqRetry);
  EXPECT_EQ(timer.at, 1000 + s.params.rreq_retry_wait);
  EXPECT_EQ(only<DiscoveryStarted>(t).attempt, 1u);
}

TEST(OriginateDiscovery, SecondCallIsAlreadyPending) {
  const Transition t1 = originate_discovery(node(S), D, 0);
  const Transition t2 = originate_discovery(t1.state, D, 10);
  EXPECT_EQ(t2.signal, Signal::AlreadyPending);
  EXPECT_TRUE(t2.actions.empty());
  EXPECT_EQ(t2.state, t1.state);
}

TEST(OriginateDiscovery, SelfIsRejected) { EXPECT_THROW(originate_discovery(node(S), S, 0), std::invalid_argument); }

TEST(HandleRreq, IntermediateRebroadcastsAndLearnsReversePath) {
  const Transition t = handle_rreq(node(N1), rreq_from(S, 1, D), S, 1002);
  const auto fwd = broadcasts<Rreq>(t);
  ASSERT_EQ(fwd.size(), 1u);
  EXPECT_EQ(fwd[0].hop_count, 1u);
  const RouteEntry& rev = t.state.routing_table.at(S);
  EXPECT_EQ(rev.next_hop, S);
  EXPECT_EQ(rev.hop_count, 1u);
  EXPECT_EQ(rev.state, RouteState::Valid);
}

TEST(HandleRreq, DuplicateIsDropped) {
  const Transition t1 = handle_rreq(node(N1), rreq_from(S, 1, D), S, 1002);
  const Transition t2 = handle_rreq(t1.state, rreq_from(S, 1, D, 1), N2, 1004);
  EXPECT_EQ(t2.signal, Signal::Dropped);
  EXPECT_TRUE(t2.actions.empty());
}

TEST(HandleRreq, ExcludedNodeDropsSilently) {
  Rreq r = rreq_from(S, 2, D);
  r.excluded = {N2};
  const Transition t = handle_rreq(node(N2), r, S, 0);
  EXPECT_EQ(t.signal, Signal::Dropped);
  EXPECT_TRUE(t.actions.empty());
  EXPECT_FALSE(t.state.routing_table.contains(S));
}

TEST(HandleRreq, DestinationRepliesWithItsIndex) {
  NodeState d = node(D);
  d.own_index = 1;
  const Transition t = handle_rreq(d, rreq_from(S, 1, D, 3), N3, 0);
  const auto reps = unicasts<Rrep>(t);
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_EQ(reps[0].first, N3);
  EXPECT_EQ(reps[0].second.origin, S);
  EXPECT_EQ(reps[0].second.path_indices, (std::vector<PathIndex>{{D, 1}}));
  EXPECT_TRUE(broadcasts<Rreq>(t).empty());
}

TEST(HandleRreq, PruningAtLimitIsOptIn) {
  NodeState full = node(N2);
  full.own_index = 2;
  EXPECT_EQ(broadcasts<Rreq>(handle_rreq(full, rreq_from(S, 1, D), S, 0)).size(), 1u);
  full.params.prune_at_limit = true;
  const Transition t = handle_rreq(full, rreq_from(S, 1, D), S, 0);
  EXPECT_EQ(t.signal, Signal::Dropped);
  EXPECT_TRUE(broadcasts<Rreq>(t).empty());
}

Rrep reply(NodeId origin, NodeId dest, std::vector<PathIndex> path, SeqNo seq = SeqNo{1}) {
  Rrep r;
  r.origin = origin;
  r.dest = dest;
  r.dest_seqno = seq;
  r.hop_count = static_cast<std::uint32_t>(path.size() - 1);
  r.lifetime = from_ms(10000);
  r.path_indices = std::move(path);
  return r;
}

TEST(HandleRrep, IntermediateAppendsIndexAndForwards) {
  NodeState n = handle_rreq(node(N2), rreq_from(S, 1, D, 1), N1, 0).state;
  n.own_index = 1;
  const Transition t = handle_rrep(n, reply(S, D, {{D, 0}, {N3, 0}}), N3, 10);
  const auto fwd = unicasts<Rrep>(t);
  ASSERT_EQ(fwd.size(), 1u);
  EXPECT_EQ(fwd[0].first, N1);
  EXPECT_EQ(fwd[0].second.path_indices.back(), (PathIndex{N2, 1}));
  EXPECT_EQ(fwd[0].second.hop_count, 2u);
  EXPECT_EQ(t.state.routing_table.at(D).next_hop, N3);
}

TEST(HandleRrep, NoReverseEntryDrops) {
  const Transition t = handle_rrep(node(N2), reply(S, D, {{D, 0}}), D, 0);
  EXPECT_EQ(t.signal, Signal::Dropped);
  EXPECT_TRUE(t.actions.empty());
}

TEST(HandleRrep, OlderSequenceIsStale) {
  NodeState n = handle_rreq(node(N2), rreq_from(S, 1, D, 1), N1, 0).state;
  n = handle_rrep(n, reply(S, D, {{D, 0}}, SeqNo{5}), N3, 1).state;
  const Transition t = handle_rrep(n, reply(S, D, {{D, 0}}, SeqNo{4}), N3, 2);
  EXPECT_EQ(t.signal, Signal::StaleReply);
}

constexpr NodeId N8{8}, N9{9}, D3{12};

TEST(HandleRrep, SourceRejectsOverloadedHopAndRetriesWithoutIt) {
  NodeState s = node(S);
  s.own_index = 1;
  Transition t = originate_discovery(s, D3, 4000);
  const std::uint32_t id = t.state.pending.at(D3).rreq_id;
  t = handle_rrep(t.state, reply(S, D3, {{D3, 0}, {N9, 1}, {N8, 1}, {N2, 2}}), N2, 4010);
  ASSERT_EQ(t.signal, Signal::Ok);
  const auto window = only<SetTimer>(t);
  EXPECT_EQ(window.key.kind, TimerKind::AcceptWindow);

  t = close_accept_window(t.state, D3, id, window.at);
  const auto rej = only<RejectRoute>(t);
  EXPECT_EQ(rej.violators, (std::set<NodeId>{N2}));
  EXPECT_EQ(rej.path, (std::vector<NodeId>{S, N2, N8, N9, D3}));
  const auto retry = broadcasts<Rreq>(t);
  ASSERT_EQ(retry.size(), 1u);
  EXPECT_EQ(retry[0].excluded, (std::set<NodeId>{N2}));
  EXPECT_NE(retry[0].rreq_id, id);
  EXPECT_EQ(only<DiscoveryStarted>(t).attempt, 2u);
  EXPECT_TRUE(all<EstablishRoute>(t).empty());
  EXPECT_EQ(t.state.own_index, 1u);
}

TEST(HandleRrep, RepliesThroughExcludedNodesAreIgnored) {
  Transition t = originate_discovery(node(S), D3, 0);
  t.state.pending.at(D3).excluded = {N2};
  t = handle_rrep(t.state, reply(S, D3, {{D3, 0}, {N2, 0}}), N2, 5);
  EXPECT_EQ(t.signal, Signal::Dropped);
}

TEST(HandleRrep, RejectionsExhaustRetries) {
  Transition t = originate_discovery(node(S), D3, 0);
  for (std::uint32_t attempt = 1; attempt <= 3; ++attempt) {
    const std::uint32_t id = t.state.pending.at(D3).rreq_id;
    // A different overloaded relay each time.
    const NodeId relay{12 + attempt};
    t = handle_rrep(t.state, reply(S, D3, {{D3, 0}, {relay, 2}}), relay, attempt * 100);
    t = close_accept_window(t.state, D3, id, attempt * 100 + 40);
  }
  EXPECT_EQ(only<DiscoveryFailed>(t).reason, FailureReason::AdmissionRejected);
  EXPECT_FALSE(t.state.pending.contains(D3));
  EXPECT_EQ(t.state.connections.at(D3).phase, ConnectionPhase::Failed);
}

TEST(HandleRrep, EarliestReplyWinsThenFewestHops) {
  Transition t = originate_discovery(node(S, RouteLimit::unlimited()), D, 0);
  const std::uint32_t id = t.state.pending.at(D).rreq_id;
  t = handle_rrep(t.state, reply(S, D, {{D, 0}, {N3, 0}, {N2, 0}}), N2, 10);
  t = handle_rrep(t.state, reply(S, D, {{D, 0}, {N1, 0}}), N1, 10);
  t = handle_rrep(t.state, reply(S, D, {{D, 0}}), D, 11);
  t = close_accept_window(t.state, D, id, 50);
  EXPECT_EQ(only<EstablishRoute>(t).path, (std::vector<NodeId>{S, N1, D}));
}

TEST(HandleRrep, SourceAdmitsAndCommits) {
  Transition t = originate_discovery(node(S), D, 0);
  const std::uint32_t id = t.state.pending.at(D).rreq_id;
  t = handle_rrep(t.state, reply(S, D, {{D, 0}, {N3, 0}, {N2, 0}, {N1, 0}}), N1, 8);
  t = close_accept_window(t.state, D, id, 48);
  EXPECT_EQ(only<Admitted>(t).path_indices.size(), 5u);
  const auto est = only<EstablishRoute>(t);
  EXPECT_EQ(est.path, (std::vector<NodeId>{S, N1, N2, N3, D}));
  EXPECT_EQ(t.state.own_index, 1u);
  EXPECT_EQ(next_hop_for(t.state, D, 48), N1);
  const auto act = unicasts<Activate>(t);
  ASSERT_EQ(act.size(), 1u);
  EXPECT_EQ(act[0].first, N1);
}

TEST(HandleRrep, BaselineIgnoresLimits) {
  Transition t = originate_discovery(node(S, RouteLimit::at_most(1), Protocol::Baseline), D, 0);
  const std::uint32_t id = t.state.pending.at(D).rreq_id;
  t = handle_rrep(t.state, reply(S, D, {{D, 5}, {N1, 7}}), N1, 8);
  t = close_accept_window(t.state, D, id, 48);
  EXPECT_EQ(all<EstablishRoute>(t).size(), 1u);
  EXPECT_TRUE(all<RejectRoute>(t).empty());
}

// ---- activation and release ---------------------------------------------------------

// Delivers every ACTIVATE/TEARDOWN unicast until none is left, like a lossless link.
struct Chain {
  std::map<NodeId, NodeState> nodes;

  void apply(NodeId at, const Transition& t) {
    nodes[at] = t.state;
    for (const auto& u : all<Unicast>(t)) {
      if (!nodes.contains(u.to)) continue;
      if (const auto* a = std::get_if<Activate>(&u.msg)) apply(u.to, handle_activate(nodes[u.to], *a, at, 0));
      if (const auto* d = std::get_if<Teardown>(&u.msg)) apply(u.to, handle_teardown(nodes[u.to], *d, at, 0));
    }
  }
  std::uint32_t index(NodeId n) { return nodes.at(n).own_index; }
};

constexpr NodeId N4{4}, N5{5}, D1{6}, N6{7}, N7{8}, D2{9};

Chain fig2_chain() {
  Chain c;
  for (NodeId n : {S, N4, N5, D1, N6, N7, D2}) c.nodes[n] = node(n);
  return c;
}

TEST(CommitRoute, Fig2IndicesFollowBothConnections) {
  Chain c = fig2_chain();
  c.apply(S, commit_route(c.nodes[S], RouteId{S, 1}, {S, N4, N5, D1}, 0));
  for (NodeId n : {S, N4, N5, D1}) EXPECT_EQ(c.index(n), 1u);
  for (NodeId n : {N6, N7, D2}) EXPECT_EQ(c.index(n), 0u);
  c.apply(S, commit_route(c.nodes[S], RouteId{S, 2}, {S, N4, N6, N7, D2}, 0));
  EXPECT_EQ(c.index(S), 2u);
  EXPECT_EQ(c.index(N4), 2u);
  for (NodeId n : {N5, D1, N6, N7, D2}) EXPECT_EQ(c.index(n), 1u);
}

TEST(CommitRoute, AdvertisesNewIndexImmediately) {
  const Transition t = commit_route(node(S), RouteId{S, 1}, {S, N1, D}, 0);
  EXPECT_EQ(only<IndexChanged>(t).new_index, 1u);
  const auto hellos = broadcasts<Hello>(t);
  ASSERT_EQ(hellos.size(), 1u);
  EXPECT_EQ(hellos[0].connection_index, 1u);
}

TEST(CommitRoute, TeardownRestoresIndices) {
  Chain c = fig2_chain();
  c.apply(S, commit_route(c.nodes[S], RouteId{S, 1}, {S, N4, N5, D1}, 0));
  c.apply(S, teardown_route(c.nodes[S], RouteId{S, 1}, 10));
  for (NodeId n : {S, N4, N5, D1}) EXPECT_EQ(c.index(n), 0u);
  EXPECT_TRUE(c.nodes[N5].carried.empty());
}

TEST(TeardownRoute, UnknownRoute) {
  const Transition t = teardown_route(node(S), RouteId{S, 9}, 0);
  EXPECT_EQ(t.signal, Signal::UnknownRoute);
  EXPECT_TRUE(t.actions.empty());
}

TEST(HandleActivate, NodeAtLimitRefuses) {
  NodeState n = node(N4);
  n.own_index = 2;
  const Transition t = handle_activate(n, Activate{RouteId{S, 3}, {S, N4, D}}, S, 0);
  EXPECT_EQ(t.state.own_index, 2u);
  const auto td = unicasts<Teardown>(t);
  ASSERT_EQ(td.size(), 1u);
  EXPECT_EQ(td[0].first, S);
  EXPECT_EQ(td[0].second.reason, TeardownReason::Refused);
  EXPECT_EQ(td[0].second.by, N4);
  EXPECT_TRUE(unicasts<Activate>(t).empty());
}

TEST(HandleActivate, RefusalMakesSourceRetryWithoutTheRefuser) {
  Chain c;
  for (NodeId n : {S, N1, D}) c.nodes[n] = node(n);
  c.nodes[N1].own_index = 2;
  Transition t = start_flow(c.nodes[S], D, 0);
  const std::uint32_t id = t.state.pending.at(D).rreq_id;
  t = handle_rrep(t.state, reply(S, D, {{D, 0}, {N1, 1}}), N1, 8);
  t = close_accept_window(t.state, D, id, 48);
  c.apply(S, t);
  EXPECT_EQ(c.index(S), 0u);
  EXPECT_EQ(c.index(N1), 2u);
  const auto& pending = c.nodes[S].pending.at(D);
  EXPECT_EQ(pending.attempt, 2u);
  EXPECT_EQ(pending.excluded, (std::set<NodeId>{N1}));
}

TEST(HandleActivate, BaselineCountsPastTheLimit) {
  NodeState n = node(N4, RouteLimit::at_most(1), Protocol::Baseline);
  n.own_index = 1;
  const Transition t = handle_activate(n, Activate{RouteId{S, 3}, {S, N4, D}}, S, 0);
  EXPECT_EQ(t.state.own_index, 2u);
}

TEST(HandleActivate, WrongSenderIsIgnored) {
  const Transition t = handle_activate(node(N4), Activate{RouteId{S, 1}, {S, N4, D}}, D, 0);
  EXPECT_EQ(t.signal, Signal::Dropped);
  EXPECT_EQ(t.state.own_index, 0u);
}

// ---- neighbors ------------------------------------------------------------------------

TEST(Hello, CarriesExactIndex) {
  NodeState n = node(N2);
  EXPECT_EQ(broadcasts<Hello>(emit_hello(n, 0)).at(0).connection_index, 0u);
  n.own_index = 2;
  const Transition t = emit_hello(n, 1000);
  EXPECT_EQ(broadcasts<Hello>(t).at(0).connection_index, 2u);
  EXPECT_EQ(only<SetTimer>(t).at, 1000 + n.params.hello_interval);
}

TEST(Hello, RefreshesNeighborAndIndexTable) {
  NodeState n = handle_hello(node(S), Hello{N4, SeqNo{1}, 0}, 100);
  EXPECT_EQ(n.neighbors.at(N4), 100);
  EXPECT_EQ(n.index_table.get(N4), 0u);
  n = handle_hello(n, Hello{N4, SeqNo{1}, 1}, 200);
  EXPECT_EQ(n.index_table.get(N4), 1u);
  EXPECT_EQ(n.neighbors.at(N4), 200);
}

NodeState with_route_via(NodeId me, NodeId next, NodeId dest, SimTime heard) {
  NodeState n = handle_hello(node(me), Hello{next, SeqNo{1}, 0}, heard);
  n.routing_table[dest] = RouteEntry{dest, next, 2, SeqNo{3}, from_ms(100000), RouteState::Valid};
  return n;
}

TEST(Liveness, SilentNeighborBreaksRoutes) {
  const NodeState n = with_route_via(N4, N5, D1, 0);
  const SimTime limit = 2 * n.params.hello_interval;
  EXPECT_TRUE(check_neighbor_liveness(n, limit).actions.empty());
  const Transition t = check_neighbor_liveness(n, 3 * n.params.hello_interval);
  EXPECT_FALSE(t.state.neighbors.contains(N5));
  EXPECT_EQ(t.state.routing_table.at(D1).state, RouteState::Broken);
  const auto rerr = broadcasts<Rerr>(t);
  ASSERT_EQ(rerr.size(), 1u);
  ASSERT_EQ(rerr[0].unreachable.size(), 1u);
  EXPECT_EQ(rerr[0].unreachable[0].dest, D1);
}

TEST(Liveness, UnusedNeighborRemovedQuietly) {
  const NodeState n = handle_hello(node(N4), Hello{N5, SeqNo{1}, 0}, 0);
  const Transition t = check_neighbor_liveness(n, from_ms(5000));
  EXPECT_FALSE(t.state.neighbors.contains(N5));
  EXPECT_TRUE(broadcasts<Rerr>(t).empty());
}

TEST(Liveness, LostNeighborReleasesCarriedRoutes) {
  Chain c = fig2_chain();
  c.apply(S, commit_route(c.nodes[S], RouteId{S, 1}, {S, N4, N5, D1}, 0));
  NodeState n4 = handle_hello(c.nodes[N4], Hello{N5, SeqNo{1}, 1}, 0);
  const Transition t = check_neighbor_liveness(n4, from_ms(3000));
  EXPECT_EQ(t.state.own_index, 0u);
  EXPECT_EQ(only<RouteReleased>(t).cause, TeardownReason::Break);
  const auto td = unicasts<Teardown>(t);
  ASSERT_EQ(td.size(), 2u);  // upstream to S and a courtesy copy to the lost neighbor
}

TEST(Rerr, SourceInvalidatesRoute) {
  const NodeState s = with_route_via(S, N4, D1, 0);
  const Transition t = handle_rerr(s, Rerr{{Unreachable{D1, SeqNo{4}}}}, N4, 10);
  EXPECT_EQ(t.state.routing_table.at(D1).state, RouteState::Broken);
  EXPECT_EQ(broadcasts<Rerr>(t).size(), 1u);
  const Transition again = handle_rerr(t.state, Rerr{{Unreachable{D1, SeqNo{4}}}}, N4, 11);
  EXPECT_EQ(again.signal, Signal::Dropped);
  EXPECT_EQ(again.state, t.state);
}

TEST(Rerr, UnknownDestinationDropped) {
  const Transition t = handle_rerr(node(S), Rerr{{Unreachable{D2, SeqNo{1}}}}, N4, 0);
  EXPECT_EQ(t.signal, Signal::Dropped);
  EXPECT_TRUE(t.actions.empty());
}

TEST(Rerr, BrokenConnectionRediscoversOnlyItsDestination) {
  Chain c = fig2_chain();
  Transition t = start_flow(c.nodes[S], D1, 0);
  t = start_flow(t.state, D2, 0);
  t.state.pending.clear();
  c.nodes[S] = t.state;
  c.apply(S, commit_route(c.nodes[S], RouteId{S, 1}, {S, N4, N5, D1}, 0));
  c.apply(S, commit_route(c.nodes[S], RouteId{S, 2}, {S, N4, N6, N7, D2}, 0));
  const Transition br = handle_teardown(c.nodes[S], Teardown{RouteId{S, 1}, TeardownReason::Break, N4}, N4, 100);
  const auto disc = only<DiscoveryStarted>(br);
  EXPECT_EQ(disc.dest, D1);
  EXPECT_EQ(disc.attempt, 1u);
  EXPECT_TRUE(br.state.active_routes.contains(RouteId{S, 2}));
  EXPECT_FALSE(br.state.active_routes.contains(RouteId{S, 1}));
  EXPECT_EQ(br.state.own_index, 1u);
}

TEST(LinkFailure, UndeliveredTeardownIsOwedUntilHeard) {
  Chain c = fig2_chain();
  c.apply(S, commit_route(c.nodes[S], RouteId{S, 1}, {S, N4, N5, D1}, 0));
  const Teardown td{RouteId{S, 1}, TeardownReason::Stop, S};
  Transition t = handle_link_failure(c.nodes[N5], D1, ControlMessage{td}, 10);
  EXPECT_TRUE(t.state.owed_teardowns.at(D1).contains(RouteId{S, 1}));
  t = receive_control(t.state, Hello{D1, SeqNo{1}, 1}, D1, 20);
  const auto sent = unicasts<Teardown>(t);
  ASSERT_EQ(sent.size(), 1u);
  EXPECT_EQ(sent[0].first, D1);
  EXPECT_TRUE(t.state.owed_teardowns.empty());
}

TEST(LinkFailure, UndeliveredDataIsDropped) {
  const DataPacket p{0, 1, S, D, 0, 512};
  const Transition t = handle_link_failure(node(N1), N2, p, 10);
  EXPECT_EQ(only<DropData>(t).reason, DropReason::LinkBroken);
}

// ---- data plane --------------------------------------------------------------------------

TEST(Data, BufferedUntilRouteThenFlushed) {
  NodeState s = node(S);
  s.params.source_buffer = 2;
  Transition t = start_flow(s, D, 0);
  const std::uint32_t id = t.state.pending.at(D).rreq_id;
  for (std::uint64_t seq = 0; seq < 3; ++seq) t = submit_data(t.state, DataPacket{0, seq, S, D, 0, 512}, 1);
  EXPECT_EQ(only<DropData>(t).reason, DropReason::BufferFull);
  t = handle_rrep(t.state, reply(S, D, {{D, 0}, {N1, 0}}), N1, 8);
  t = close_accept_window(t.state, D, id, 48);
  const auto fwd = all<ForwardData>(t);
  ASSERT_EQ(fwd.size(), 2u);
  EXPECT_EQ(fwd[0].packet.seq, 0u);
  EXPECT_EQ(fwd[1].next_hop, N1);
}

TEST(Data, DestinationDelivers) {
  const Transition t = receive_data(node(D), DataPacket{0, 1, S, D, 0, 512}, N3, 5);
  EXPECT_EQ(only<DeliverData>(t).packet.seq, 1u);
}

TEST(Data, IntermediateWithoutRouteDropsAndReports) {
  const Transition t = receive_data(node(N2), DataPacket{0, 1, S, D, 0, 512}, N1, 5);
  EXPECT_EQ(only<DropData>(t).reason, DropReason::NoRoute);
  EXPECT_EQ(broadcasts<Rerr>(t).size(), 1u);
}

TEST(Data, RejectedConnectionDropsWithReason) {
  Transition t = start_flow(node(S), D, 0);
  t.state.pending.clear();
  t.state.connections[D].phase = ConnectionPhase::Failed;
  t.state.connections[D].failure = FailureReason::AdmissionRejected;
  t = submit_data(t.state, DataPacket{0, 1, S, D, 0, 512}, 5);
  EXPECT_EQ(only<DropData>(t).reason, DropReason::AdmissionRejected);
}

TEST(Data, StoppingLastFlowReleasesRoute) {
  Transition t = start_flow(node(S), D, 0);
  t.state.pending.clear();
  t = commit_route(t.state, RouteId{S, 1}, {S, N1, D}, 10);
  t = stop_flow(t.state, D, 20);
  EXPECT_EQ(only<RouteReleased>(t).cause, TeardownReason::Stop);
  EXPECT_EQ(t.state.own_index, 0u);
  EXPECT_EQ(t.state.connections.at(D).phase, ConnectionPhase::Idle);
}

// ---- purity ----------------------------------------------------------------------------------

TEST(Purity, EqualInputsGiveEqualOutputs) {
  const NodeState base = handle_rreq(node(N2), rreq_from(S, 1, D, 1), N1, 0).state;
  const Rrep r = reply(S, D, {{D, 0}, {N3, 1}});
  const Transition a = handle_rrep(base, r, N3, 10);
  const Transition b = handle_rrep(base, r, N3, 10);
  EXPECT_EQ(a.state, b.state);
  EXPECT_EQ(a.actions, b.actions);
  EXPECT_EQ(a.signal, b.signal);

  const Transition h1 = handle_timer(a.state, TimerKey{TimerKind::Hello, N2, 0}, 5000);
  const Transition h2 = handle_timer(a.state, TimerKey{TimerKind::Hello, N2, 0}, 5000);
  EXPECT_EQ(h1.state, h2.state);
  EXPECT_EQ(h1.actions, h2.actions);
}

TEST(Names, ProtocolAndReasons) {
  EXPECT_EQ(parse_protocol("aodv"), Protocol::Baseline);
  EXPECT_EQ(parse_protocol("baseline"), Protocol::Baseline);
  EXPECT_EQ(parse_protocol("ci"), Protocol::CiAodv);
  EXPECT_EQ(parse_protocol("ci-aodv"), Protocol::CiAodv);
  EXPECT_FALSE(parse_protocol("dsr"));
  for (auto r : {DropReason::QueueFull, DropReason::NoRoute, DropReason::LinkBroken, DropReason::BufferFull,
                 DropReason::AdmissionRejected, DropReason::FlowStopped})
    EXPECT_EQ(parse_drop_reason(to_string(r)), r);
  for (auto r : {FailureReason::NoRoute, FailureReason::AdmissionRejected})
    EXPECT_EQ(parse_failure_reason(to_string(r)), r);
}

}  // namespace
}  // namespace ciaodv
