#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string_view>
#include <variant>
#include <vector>

#include "ciaodv/ids.hpp"
#include "ciaodv/seqno.hpp"
#include "ciaodv/time.hpp"

namespace ciaodv {

struct Rreq {
  NodeId origin;
  std::uint32_t rreq_id = 0;
  NodeId dest;
  SeqNo origin_seqno;
  std::optional<SeqNo> dest_seqno_known;
  std::uint32_t hop_count = 0;
  // Nodes that must neither forward nor answer this request.
  std::set<NodeId> excluded;

  bool operator==(const Rreq&) const = default;
};

struct PathIndex {
  NodeId node;
  std::uint32_t index = 0;

  bool operator==(const PathIndex&) const = default;
};

struct Rrep {
  NodeId origin;  // the node that issued the RREQ
  NodeId dest;
  SeqNo dest_seqno;
  std::uint32_t hop_count = 0;
  SimTime lifetime = 0;
  // Connection index of every node the reply has crossed, destination first.
  std::vector<PathIndex> path_indices;

  bool operator==(const Rrep&) const = default;
};

struct Unreachable {
  NodeId dest;
  SeqNo seqno;

  bool operator==(const Unreachable&) const = default;
};

struct Rerr {
  std::vector<Unreachable> unreachable;

  bool operator==(const Rerr&) const = default;
};

struct Hello {
  NodeId sender;
  SeqNo sender_seqno;
  std::uint32_t connection_index = 0;

  bool operator==(const Hello&) const = default;
};

/// Travels the forward path after admission; every receiver counts the route.
struct Activate {
  RouteId route;
  std::vector<NodeId> path;

  bool operator==(const Activate&) const = default;
};

enum class TeardownReason { Stop, Break, Refused };

/// Releases a route hop by hop, in either direction along its path.
struct Teardown {
  RouteId route;
  TeardownReason reason = TeardownReason::Stop;
  NodeId by;  // node that started the release

  bool operator==(const Teardown&) const = default;
};

using ControlMessage = std::variant<Rreq, Rrep, Rerr, Hello, Activate, Teardown>;

enum class MessageKind { Rreq, Rrep, Rerr, Hello, Activate, Teardown };
inline constexpr std::size_t kMessageKindCount = 6;

MessageKind kind_of(const ControlMessage& msg);
std::string_view to_string(MessageKind kind);
std::optional<MessageKind> parse_message_kind(std::string_view s);

std::string_view to_string(TeardownReason reason);
std::optional<TeardownReason> parse_teardown_reason(std::string_view s);

struct DataPacket {
  std::uint32_t flow = 0;
  std::uint64_t seq = 0;
  NodeId src;
  NodeId dst;
  SimTime created_at = 0;
  std::uint32_t payload_bytes = 0;

  bool operator==(const DataPacket&) const = default;
};

}  // namespace ciaodv
