#pragma once

#include <cstdint>

#include "ciaodv/ids.hpp"
#include "ciaodv/seqno.hpp"
#include "ciaodv/time.hpp"

namespace ciaodv {

enum class RouteState { Valid, Broken };

/// One routing-table row. Broken rows are kept until they expire so that
/// their sequence number still guards against stale replies.
struct RouteEntry {
  NodeId destination;
  NodeId next_hop;
  std::uint32_t hop_count = 0;
  SeqNo dest_seqno;
  SimTime expires_at = 0;
  RouteState state = RouteState::Valid;

  bool operator==(const RouteEntry&) const = default;

  bool usable(SimTime now) const { return state == RouteState::Valid && expires_at > now; }
};

}  // namespace ciaodv
