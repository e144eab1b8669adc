#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ciaodv/ids.hpp"
#include "ciaodv/messages.hpp"

namespace ciaodv {

class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// key=value fields in fixed order, as they appear in trace lines.
using FieldList = std::vector<std::pair<std::string, std::string>>;

FieldList encode_fields(const ControlMessage& msg, const NodeNames& names);
FieldList encode_fields(const DataPacket& packet, const NodeNames& names);

/// Lookup helper over parsed key=value fields; throws CodecError on absence.
class FieldReader {
 public:
  explicit FieldReader(const FieldList& fields) : fields_(fields) {}

  const std::string& get(std::string_view key) const;
  bool has(std::string_view key) const;

 private:
  const FieldList& fields_;
};

ControlMessage decode_message(MessageKind kind, const FieldReader& fields, const NodeNames& names);
DataPacket decode_packet(const FieldReader& fields, const NodeNames& names);

// Building blocks reused by the trace and report codecs.
std::string encode_route_id(RouteId id, const NodeNames& names);
RouteId decode_route_id(std::string_view s, const NodeNames& names);
std::string encode_node_list(const std::vector<NodeId>& nodes, const NodeNames& names);
std::vector<NodeId> decode_node_list(std::string_view s, const NodeNames& names);
std::string encode_path_indices(const std::vector<PathIndex>& path, const NodeNames& names);
std::vector<PathIndex> decode_path_indices(std::string_view s, const NodeNames& names);
NodeId decode_node(std::string_view s, const NodeNames& names);

/// Canonical "KIND\tk=v\t..." text of one message.
std::string serialize_message(const ControlMessage& msg, const NodeNames& names);
ControlMessage parse_message(std::string_view line, const NodeNames& names);

}  // namespace ciaodv
