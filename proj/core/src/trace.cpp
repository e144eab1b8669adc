#include "ciaodv/trace.hpp"

#include <ostream>
#include <sstream>

#include "ciaodv/text.hpp"

namespace ciaodv {

namespace {

constexpr std::string_view kKindNames[] = {"init", "tx",    "rx",    "lost",  "ufail",  "fstart", "fstop",
                                           "dgen", "dfwd",  "drecv", "ddrop", "disc",   "admit",  "reject",
                                           "estab", "release", "fail", "index", "depart"};
static_assert(std::size(kKindNames) == kTraceKindCount);

}  // namespace

MalformedTrace::MalformedTrace(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "trace line " + std::to_string(line) + ": " + what : "trace: " + what),
      line_(line) {}

std::string_view to_string(TraceKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<TraceKind> parse_trace_kind(std::string_view s) {
  for (std::size_t i = 0; i < kTraceKindCount; ++i)
    if (kKindNames[i] == s) return static_cast<TraceKind>(i);
  return std::nullopt;
}

const std::string* TraceEvent::field(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return &v;
  return nullptr;
}

const std::string& TraceEvent::require(std::string_view key) const {
  if (const auto* v = field(key)) return *v;
  throw MalformedTrace(0, std::string(to_string(kind)) + " event without field " + std::string(key));
}

void write_trace(std::ostream& out, const SimTrace& trace) {
  const auto& h = trace.header;
  out << kTraceMagic << '\n';
  out << "# scenario_hash " << text::to_hex(h.scenario_hash) << '\n';
  out << "# seed " << h.seed << '\n';
  out << "# protocol " << to_string(h.protocol) << '\n';
  out << "# end_ms " << text::format_ms(h.end) << '\n';
  for (std::size_t i = 0; i < h.labels.size(); ++i) out << "# node " << i << ' ' << h.labels[i] << '\n';
  std::istringstream scn(h.scenario);
  for (std::string line; std::getline(scn, line);) out << "#scn " << line << '\n';

  for (const auto& e : trace.events) {
    out << text::format_ms_fixed(e.at) << '\t' << to_string(e.kind) << '\t' << h.labels.at(e.node.value) << '\t'
        << (e.msg ? to_string(*e.msg) : "-");
    for (const auto& [k, v] : e.fields) out << '\t' << k << '=' << v;
    out << '\n';
  }
}

std::string render_trace(const SimTrace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return std::move(out).str();
}

SimTrace parse_trace(std::string_view text) {
  SimTrace t;
  std::size_t lineno = 0;
  bool magic = false, hash = false, seed = false, protocol = false, end = false;
  NodeNames names;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    auto fail = [&](const std::string& why) { throw MalformedTrace(lineno, why); };

    if (lineno == 1) {
      if (line != kTraceMagic) fail("missing trace header");
      magic = true;
      continue;
    }
    if (line.starts_with("#scn")) {
      if (line.size() > 4 && line[4] != ' ') fail("bad scenario line");
      t.header.scenario += std::string(line.size() > 5 ? line.substr(5) : std::string_view{}) + '\n';
      continue;
    }
    if (line.starts_with("# ")) {
      auto parts = text::split(line.substr(2), ' ');
      if (parts.size() < 2) fail("bad header line");
      if (parts[0] == "scenario_hash") {
        auto v = text::parse_hex(parts[1]);
        if (!v) fail("bad scenario_hash");
        t.header.scenario_hash = *v;
        hash = true;
      } else if (parts[0] == "seed") {
        auto v = text::parse_uint(parts[1]);
        if (!v) fail("bad seed");
        t.header.seed = *v;
        seed = true;
      } else if (parts[0] == "protocol") {
        auto v = parse_protocol(parts[1]);
        if (!v) fail("bad protocol");
        t.header.protocol = *v;
        protocol = true;
      } else if (parts[0] == "end_ms") {
        auto v = text::parse_ms(parts[1]);
        if (!v) fail("bad end_ms");
        t.header.end = *v;
        end = true;
      } else if (parts[0] == "node") {
        if (parts.size() != 3) fail("bad node line");
        auto id = text::parse_uint(parts[1]);
        if (!id || *id != names.size()) fail("node ids must be dense and in order");
        try {
          names.add(std::string(parts[2]));
        } catch (const std::exception& e) {
          fail(e.what());
        }
      } else {
        fail("unknown header field " + std::string(parts[0]));
      }
      continue;
    }
    if (line.empty()) continue;

    auto cols = text::split(line, '\t');
    if (cols.size() < 4) fail("expected at least 4 columns");
    TraceEvent e;
    auto at = text::parse_ms(cols[0]);
    if (!at) fail("bad time");
    e.at = *at;
    auto kind = parse_trace_kind(cols[1]);
    if (!kind) fail("unknown event kind " + std::string(cols[1]));
    e.kind = *kind;
    auto node = names.find(cols[2]);
    if (!node) fail("unknown node " + std::string(cols[2]));
    e.node = *node;
    if (cols[3] != "-") {
      auto mk = parse_message_kind(cols[3]);
      if (!mk) fail("unknown message kind " + std::string(cols[3]));
      e.msg = *mk;
    }
    for (std::size_t i = 4; i < cols.size(); ++i) {
      auto eq = cols[i].find('=');
      if (eq == std::string_view::npos || eq == 0) fail("expected key=value");
      e.fields.emplace_back(std::string(cols[i].substr(0, eq)), std::string(cols[i].substr(eq + 1)));
    }
    if (!t.events.empty() && e.at < t.events.back().at) fail("events out of time order");
    t.events.push_back(std::move(e));
  }
  if (!magic) throw MalformedTrace(0, "empty trace");
  if (!hash || !seed || !protocol || !end) throw MalformedTrace(0, "incomplete header");
  t.header.labels = names.labels();
  return t;
}

}  // namespace ciaodv
