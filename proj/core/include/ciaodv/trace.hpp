#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ciaodv/codec.hpp"
#include "ciaodv/ids.hpp"
#include "ciaodv/messages.hpp"
#include "ciaodv/node.hpp"
#include "ciaodv/time.hpp"

namespace ciaodv {

class MalformedTrace : public std::runtime_error {
 public:
  MalformedTrace(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class TraceKind {
  Init,     // node configuration at t=0
  Tx,       // control message sent (to=* for broadcast)
  Rx,       // control message received
  Lost,     // broadcast copy lost on the medium
  Ufail,    // unicast receiver out of range
  Fstart,   // flow switched on
  Fstop,    // flow switched off
  Dgen,     // data packet generated at its source
  Dfwd,     // data packet left a node's queue
  Drecv,    // data packet delivered to its destination
  Ddrop,    // data packet dropped
  Disc,     // discovery attempt started
  Admit,    // admission passed
  Reject,   // admission failed or activation refused
  Estab,    // route established at its source
  Release,  // a node stopped counting a route
  Fail,     // discovery gave up
  Index,    // connection index changed
  Depart,   // node left the network
};
inline constexpr std::size_t kTraceKindCount = 19;

std::string_view to_string(TraceKind kind);
std::optional<TraceKind> parse_trace_kind(std::string_view s);

struct TraceEvent {
  SimTime at = 0;
  TraceKind kind = TraceKind::Init;
  NodeId node;
  std::optional<MessageKind> msg;
  FieldList fields;

  bool operator==(const TraceEvent&) const = default;

  /// nullptr if absent.
  const std::string* field(std::string_view key) const;
  /// Throws MalformedTrace(0, ...) if absent.
  const std::string& require(std::string_view key) const;
};

struct TraceHeader {
  std::uint64_t scenario_hash = 0;
  std::uint64_t seed = 0;
  Protocol protocol = Protocol::CiAodv;
  SimTime end = 0;
  std::vector<std::string> labels;
  std::string scenario;  // rendered scenario text

  bool operator==(const TraceHeader&) const = default;
};

struct SimTrace {
  TraceHeader header;
  std::vector<TraceEvent> events;

  bool operator==(const SimTrace&) const = default;

  NodeNames names() const { return NodeNames(header.labels); }
};

inline constexpr std::string_view kTraceMagic = "# ciaodv-trace v1";

void write_trace(std::ostream& out, const SimTrace& trace);
std::string render_trace(const SimTrace& trace);
/// Inverse of render_trace. Throws MalformedTrace with a 1-based line number.
SimTrace parse_trace(std::string_view text);

}  // namespace ciaodv
