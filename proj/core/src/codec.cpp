#include "ciaodv/codec.hpp"

#include "ciaodv/text.hpp"

namespace ciaodv {

namespace {

std::string seq_str(SeqNo s) { return std::to_string(s.value); }

SeqNo decode_seq(std::string_view s) {
  const auto v = text::parse_uint(s);
  if (!v || *v > 0xffffffffULL) throw CodecError("bad sequence number: " + std::string(s));
  return SeqNo{static_cast<std::uint32_t>(*v)};
}

std::uint32_t decode_u32(std::string_view s) {
  const auto v = text::parse_uint(s);
  if (!v || *v > 0xffffffffULL) throw CodecError("bad integer: " + std::string(s));
  return static_cast<std::uint32_t>(*v);
}

struct FieldEncoder {
  const NodeNames& names;
  FieldList out;

  void operator()(const Rreq& m) {
    out.emplace_back("origin", names.label(m.origin));
    out.emplace_back("id", std::to_string(m.rreq_id));
    out.emplace_back("dest", names.label(m.dest));
    out.emplace_back("oseq", seq_str(m.origin_seqno));
    out.emplace_back("dseq", m.dest_seqno_known ? seq_str(*m.dest_seqno_known) : "-");
    out.emplace_back("hops", std::to_string(m.hop_count));
    out.emplace_back("excluded",
                     encode_node_list({m.excluded.begin(), m.excluded.end()}, names));
  }
  void operator()(const Rrep& m) {
    out.emplace_back("origin", names.label(m.origin));
    out.emplace_back("dest", names.label(m.dest));
    out.emplace_back("dseq", seq_str(m.dest_seqno));
    out.emplace_back("hops", std::to_string(m.hop_count));
    out.emplace_back("lifetime", text::format_ms(m.lifetime));
    out.emplace_back("path", encode_path_indices(m.path_indices, names));
  }
  void operator()(const Rerr& m) {
    std::string s;
    for (const auto& u : m.unreachable) {
      if (!s.empty()) s += ',';
      s += names.label(u.dest) + ':' + seq_str(u.seqno);
    }
    out.emplace_back("unreachable", s.empty() ? "-" : s);
  }
  void operator()(const Hello& m) {
    out.emplace_back("sender", names.label(m.sender));
    out.emplace_back("seq", seq_str(m.sender_seqno));
    out.emplace_back("index", std::to_string(m.connection_index));
  }
  void operator()(const Activate& m) {
    out.emplace_back("route", encode_route_id(m.route, names));
    out.emplace_back("path", encode_node_list(m.path, names));
  }
  void operator()(const Teardown& m) {
    out.emplace_back("route", encode_route_id(m.route, names));
    out.emplace_back("reason", std::string(to_string(m.reason)));
    out.emplace_back("by", names.label(m.by));
  }
};

}  // namespace

NodeId decode_node(std::string_view s, const NodeNames& names) {
  const auto id = names.find(s);
  if (!id) throw CodecError("unknown node label: " + std::string(s));
  return *id;
}

FieldList encode_fields(const ControlMessage& msg, const NodeNames& names) {
  FieldEncoder enc{names, {}};
  std::visit(enc, msg);
  return std::move(enc.out);
}

FieldList encode_fields(const DataPacket& p, const NodeNames& names) {
  return {{"flow", std::to_string(p.flow)},
          {"seq", std::to_string(p.seq)},
          {"src", names.label(p.src)},
          {"dst", names.label(p.dst)},
          {"born", text::format_ms(p.created_at)},
          {"bytes", std::to_string(p.payload_bytes)}};
}

const std::string& FieldReader::get(std::string_view key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return v;
  }
  throw CodecError("missing field: " + std::string(key));
}

bool FieldReader::has(std::string_view key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return true;
  }
  return false;
}

std::string encode_route_id(RouteId id, const NodeNames& names) {
  return names.label(id.source) + '#' + std::to_string(id.serial);
}

RouteId decode_route_id(std::string_view s, const NodeNames& names) {
  const auto hash = s.rfind('#');
  if (hash == std::string_view::npos) throw CodecError("bad route id: " + std::string(s));
  return RouteId{decode_node(s.substr(0, hash), names), decode_u32(s.substr(hash + 1))};
}

std::string encode_node_list(const std::vector<NodeId>& nodes, const NodeNames& names) {
  if (nodes.empty()) return "-";
  std::string s;
  for (const auto n : nodes) {
    if (!s.empty()) s += ',';
    s += names.label(n);
  }
  return s;
}

std::vector<NodeId> decode_node_list(std::string_view s, const NodeNames& names) {
  std::vector<NodeId> out;
  if (s == "-") return out;
  for (const auto part : text::split(s, ',')) out.push_back(decode_node(part, names));
  return out;
}

std::string encode_path_indices(const std::vector<PathIndex>& path, const NodeNames& names) {
  if (path.empty()) return "-";
  std::string s;
  for (const auto& pi : path) {
    if (!s.empty()) s += ',';
    s += names.label(pi.node) + ':' + std::to_string(pi.index);
  }
  return s;
}

std::vector<PathIndex> decode_path_indices(std::string_view s, const NodeNames& names) {
  std::vector<PathIndex> out;
  if (s == "-") return out;
  for (const auto part : text::split(s, ',')) {
    const auto colon = part.rfind(':');
    if (colon == std::string_view::npos) throw CodecError("bad path entry: " + std::string(part));
    out.push_back(PathIndex{decode_node(part.substr(0, colon), names),
                            decode_u32(part.substr(colon + 1))});
  }
  return out;
}

ControlMessage decode_message(MessageKind kind, const FieldReader& f, const NodeNames& names) {
  switch (kind) {
    case MessageKind::Rreq: {
      Rreq m;
      m.origin = decode_node(f.get("origin"), names);
      m.rreq_id = decode_u32(f.get("id"));
      m.dest = decode_node(f.get("dest"), names);
      m.origin_seqno = decode_seq(f.get("oseq"));
      if (f.get("dseq") != "-") m.dest_seqno_known = decode_seq(f.get("dseq"));
      m.hop_count = decode_u32(f.get("hops"));
      for (const auto n : decode_node_list(f.get("excluded"), names)) m.excluded.insert(n);
      return m;
    }
    case MessageKind::Rrep: {
      Rrep m;
      m.origin = decode_node(f.get("origin"), names);
      m.dest = decode_node(f.get("dest"), names);
      m.dest_seqno = decode_seq(f.get("dseq"));
      m.hop_count = decode_u32(f.get("hops"));
      const auto lifetime = text::parse_ms(f.get("lifetime"));
      if (!lifetime) throw CodecError("bad lifetime");
      m.lifetime = *lifetime;
      m.path_indices = decode_path_indices(f.get("path"), names);
      return m;
    }
    case MessageKind::Rerr: {
      Rerr m;
      const auto& s = f.get("unreachable");
      if (s != "-") {
        for (const auto part : text::split(s, ',')) {
          const auto colon = part.rfind(':');
          if (colon == std::string_view::npos) throw CodecError("bad unreachable entry");
          m.unreachable.push_back(
              Unreachable{decode_node(part.substr(0, colon), names), decode_seq(part.substr(colon + 1))});
        }
      }
      return m;
    }
    case MessageKind::Hello:
      return Hello{decode_node(f.get("sender"), names), decode_seq(f.get("seq")),
                   decode_u32(f.get("index"))};
    case MessageKind::Activate:
      return Activate{decode_route_id(f.get("route"), names), decode_node_list(f.get("path"), names)};
    case MessageKind::Teardown: {
      const auto reason = parse_teardown_reason(f.get("reason"));
      if (!reason) throw CodecError("bad teardown reason");
      return Teardown{decode_route_id(f.get("route"), names), *reason, decode_node(f.get("by"), names)};
    }
  }
  throw CodecError("unknown message kind");
}

DataPacket decode_packet(const FieldReader& f, const NodeNames& names) {
  DataPacket p;
  p.flow = decode_u32(f.get("flow"));
  const auto seq = text::parse_uint(f.get("seq"));
  if (!seq) throw CodecError("bad packet seq");
  p.seq = *seq;
  p.src = decode_node(f.get("src"), names);
  p.dst = decode_node(f.get("dst"), names);
  const auto born = text::parse_ms(f.get("born"));
  if (!born) throw CodecError("bad packet birth time");
  p.created_at = *born;
  p.payload_bytes = decode_u32(f.get("bytes"));
  return p;
}

std::string serialize_message(const ControlMessage& msg, const NodeNames& names) {
  std::string out(to_string(kind_of(msg)));
  for (const auto& [k, v] : encode_fields(msg, names)) {
    out += '\t';
    out += k;
    out += '=';
    out += v;
  }
  return out;
}

ControlMessage parse_message(std::string_view line, const NodeNames& names) {
  const auto cols = text::split(line, '\t');
  const auto kind = parse_message_kind(cols.at(0));
  if (!kind) throw CodecError("unknown message kind: " + std::string(cols.at(0)));
  FieldList fields;
  for (std::size_t i = 1; i < cols.size(); ++i) {
    const auto eq = cols[i].find('=');
    if (eq == std::string_view::npos) throw CodecError("field without '='");
    fields.emplace_back(std::string(cols[i].substr(0, eq)), std::string(cols[i].substr(eq + 1)));
  }
  return decode_message(*kind, FieldReader(fields), names);
}

}  // namespace ciaodv
