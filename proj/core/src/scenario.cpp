#include "ciaodv/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "ciaodv/rng.hpp"
#include "ciaodv/text.hpp"

namespace ciaodv {

std::string_view to_string(TrafficPattern p) { return p == TrafficPattern::Cbr ? "cbr" : "poisson"; }

std::optional<TrafficPattern> parse_traffic_pattern(std::string_view s) {
  if (s == "cbr") return TrafficPattern::Cbr;
  if (s == "poisson") return TrafficPattern::Poisson;
  return std::nullopt;
}

NodeNames ScenarioSpec::names() const {
  NodeNames n;
  for (const auto& node : nodes) n.add(node.label);
  return n;
}

std::optional<NodeId> ScenarioSpec::find(std::string_view label) const {
  for (const auto& node : nodes)
    if (node.label == label) return node.id;
  return std::nullopt;
}

void ScenarioSpec::set_route_limit(RouteLimit limit) {
  defaults.route_limit = limit;
  for (auto& n : nodes) n.params.route_limit = limit;
}

std::string_view to_string(ScenarioErrorKind k) {
  switch (k) {
    case ScenarioErrorKind::SyntaxError: return "SyntaxError";
    case ScenarioErrorKind::UnknownNode: return "UnknownNode";
    case ScenarioErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ScenarioErrorKind::BadParameter: return "BadParameter";
  }
  return "?";
}

namespace {

std::string describe(const std::vector<ScenarioIssue>& issues) {
  std::string s;
  for (const auto& i : issues) {
    if (!s.empty()) s += '\n';
    s += i.line ? "line " + std::to_string(i.line) + ": " : std::string("scenario: ");
    s += std::string(to_string(i.kind)) + ": " + i.message;
  }
  return s;
}

}  // namespace

ScenarioError::ScenarioError(std::vector<ScenarioIssue> issues)
    : std::runtime_error(describe(issues)), issues_(std::move(issues)) {}

namespace {

// ---- per-node knobs, shared by [params] defaults and node-line overrides ----

struct NodeKnobs {
  NodeParams params;
  double capacity_pps = 1000.0;
  std::uint32_t queue_len_max = 50;
};

using Setter = std::function<bool(NodeKnobs&, std::string_view)>;
using Getter = std::function<std::string(const NodeKnobs&)>;

struct Knob {
  std::string_view key;
  Setter set;
  Getter get;
};

template <class T>
bool set_u32(T& field, std::string_view s, std::uint32_t min) {
  auto v = text::parse_uint(s);
  if (!v || *v < min || *v > 0xffffffffULL) return false;
  field = static_cast<T>(*v);
  return true;
}

bool set_ms(SimTime& field, std::string_view s, SimTime min) {
  auto v = text::parse_ms(s);
  if (!v || *v < min) return false;
  field = *v;
  return true;
}

const std::vector<Knob>& node_knobs() {
  static const std::vector<Knob> knobs = {
      {"route_limit",
       [](NodeKnobs& k, std::string_view s) {
         auto v = RouteLimit::parse(s);
         if (v) k.params.route_limit = *v;
         return v.has_value();
       },
       [](const NodeKnobs& k) { return k.params.route_limit.to_string(); }},
      {"hello_interval_ms", [](NodeKnobs& k, std::string_view s) { return set_ms(k.params.hello_interval, s, 1); },
       [](const NodeKnobs& k) { return text::format_ms(k.params.hello_interval); }},
      {"allowed_hello_loss",
       [](NodeKnobs& k, std::string_view s) { return set_u32(k.params.allowed_hello_loss, s, 1); },
       [](const NodeKnobs& k) { return std::to_string(k.params.allowed_hello_loss); }},
      {"active_route_timeout_ms",
       [](NodeKnobs& k, std::string_view s) { return set_ms(k.params.active_route_timeout, s, 1); },
       [](const NodeKnobs& k) { return text::format_ms(k.params.active_route_timeout); }},
      {"rreq_retries", [](NodeKnobs& k, std::string_view s) { return set_u32(k.params.rreq_retries, s, 0); },
       [](const NodeKnobs& k) { return std::to_string(k.params.rreq_retries); }},
      {"rreq_retry_wait_ms", [](NodeKnobs& k, std::string_view s) { return set_ms(k.params.rreq_retry_wait, s, 1); },
       [](const NodeKnobs& k) { return text::format_ms(k.params.rreq_retry_wait); }},
      {"accept_window_ms", [](NodeKnobs& k, std::string_view s) { return set_ms(k.params.accept_window, s, 0); },
       [](const NodeKnobs& k) { return text::format_ms(k.params.accept_window); }},
      {"source_buffer", [](NodeKnobs& k, std::string_view s) { return set_u32(k.params.source_buffer, s, 0); },
       [](const NodeKnobs& k) { return std::to_string(k.params.source_buffer); }},
      {"prune_at_limit",
       [](NodeKnobs& k, std::string_view s) {
         auto v = text::parse_bool(s);
         if (v) k.params.prune_at_limit = *v;
         return v.has_value();
       },
       [](const NodeKnobs& k) { return std::string(k.params.prune_at_limit ? "true" : "false"); }},
      {"capacity_pps",
       [](NodeKnobs& k, std::string_view s) {
         auto v = text::parse_double(s);
         if (!v || !(*v > 0) || !std::isfinite(*v)) return false;
         k.capacity_pps = *v;
         return true;
       },
       [](const NodeKnobs& k) { return text::format_double(k.capacity_pps); }},
      {"queue_len_max", [](NodeKnobs& k, std::string_view s) { return set_u32(k.queue_len_max, s, 1); },
       [](const NodeKnobs& k) { return std::to_string(k.queue_len_max); }},
  };
  return knobs;
}

const Knob* find_knob(std::string_view key) {
  for (const auto& k : node_knobs())
    if (k.key == key) return &k;
  return nullptr;
}

// ---- parsing ----------------------------------------------------------------

struct Line {
  std::size_t no;
  std::string_view text;
};

struct Parser {
  std::vector<ScenarioIssue> issues;
  ScenarioSpec spec;

  void error(ScenarioErrorKind kind, std::size_t line, std::string msg) {
    issues.push_back(ScenarioIssue{kind, line, std::move(msg)});
  }
  void syntax(std::size_t line, std::string msg) { error(ScenarioErrorKind::SyntaxError, line, std::move(msg)); }
  void bad(std::size_t line, std::string msg) { error(ScenarioErrorKind::BadParameter, line, std::move(msg)); }

  // "key = value" lines; reports duplicates.
  std::vector<std::pair<Line, std::pair<std::string_view, std::string_view>>> assignments(
      const std::vector<Line>& lines, const std::set<std::string_view>& repeatable = {}) {
    std::vector<std::pair<Line, std::pair<std::string_view, std::string_view>>> out;
    std::set<std::string_view> seen;
    for (const auto& l : lines) {
      auto eq = l.text.find('=');
      if (eq == std::string_view::npos) {
        syntax(l.no, "expected key = value");
        continue;
      }
      auto key = text::trim(l.text.substr(0, eq));
      auto value = text::trim(l.text.substr(eq + 1));
      if (key.empty() || value.empty()) {
        syntax(l.no, "expected key = value");
        continue;
      }
      if (!repeatable.contains(key) && !seen.insert(key).second) {
        bad(l.no, "duplicate key " + std::string(key));
        continue;
      }
      out.push_back({l, {key, value}});
    }
    return out;
  }

  void params(const std::vector<Line>& lines, NodeKnobs& defaults) {
    for (const auto& [l, kv] : assignments(lines)) {
      const auto& [key, value] = kv;
      std::string k(key), v(value);
      if (key == "name") {
        spec.name = v;
      } else if (key == "protocol") {
        auto p = parse_protocol(value);
        if (!p) bad(l.no, "protocol must be aodv or ci-aodv, got " + v);
        else spec.protocol = *p;
      } else if (key == "seed") {
        auto s = text::parse_uint(value);
        if (!s) bad(l.no, "seed must be a non-negative integer, got " + v);
        else spec.seed = *s;
      } else if (key == "duration_ms") {
        if (!set_ms(spec.duration, value, 1)) bad(l.no, "duration_ms must be a positive time, got " + v);
      } else if (const Knob* knob = find_knob(key)) {
        if (!knob->set(defaults, value)) bad(l.no, "bad value for " + k + ": " + v);
      } else {
        bad(l.no, "unknown parameter " + k);
      }
    }
  }

  void medium(const std::vector<Line>& lines) {
    for (const auto& [l, kv] : assignments(lines)) {
      const auto& [key, value] = kv;
      std::string k(key), v(value);
      if (key == "range") {
        auto r = text::parse_double(value);
        if (!r || !(*r > 0) || !std::isfinite(*r)) bad(l.no, "range must be positive, got " + v);
        else spec.medium.range = *r;
      } else if (key == "latency_ms") {
        if (!set_ms(spec.medium.per_hop_latency, value, 0)) bad(l.no, "bad latency_ms: " + v);
      } else if (key == "loss_rate") {
        auto r = text::parse_double(value);
        if (!r || !(*r >= 0 && *r <= 1)) bad(l.no, "loss_rate must be in [0, 1], got " + v);
        else spec.medium.loss_rate = *r;
      } else {
        bad(l.no, "unknown medium parameter " + k);
      }
    }
  }

  // Departures need node labels, so they are resolved after [nodes].
  std::vector<std::pair<Line, std::string_view>> departures;

  void mobility(const std::vector<Line>& lines) {
    auto& m = spec.mobility;
    for (const auto& [l, kv] : assignments(lines, {"depart"})) {
      const auto& [key, value] = kv;
      std::string k(key), v(value);
      if (key == "model") {
        auto model = parse_mobility_model(value);
        if (!model) bad(l.no, "model must be static or waypoint, got " + v);
        else m.model = *model;
      } else if (key == "step_ms") {
        if (!set_ms(m.step, value, 1)) bad(l.no, "step_ms must be a positive time, got " + v);
      } else if (key == "speed_min" || key == "speed_max") {
        auto s = text::parse_double(value);
        if (!s || !(*s >= 0) || !std::isfinite(*s)) bad(l.no, k + " must be non-negative, got " + v);
        else (key == "speed_min" ? m.speed_min : m.speed_max) = *s;
      } else if (key == "pause_ms") {
        if (!set_ms(m.pause, value, 0)) bad(l.no, "bad pause_ms: " + v);
      } else if (key == "area") {
        auto parts = text::split_ws(value);
        auto w = parts.size() == 2 ? text::parse_double(parts[0]) : std::nullopt;
        auto h = parts.size() == 2 ? text::parse_double(parts[1]) : std::nullopt;
        if (!w || !h || *w < 0 || *h < 0) bad(l.no, "area must be two non-negative numbers, got " + v);
        else m.area_w = *w, m.area_h = *h;
      } else if (key == "depart") {
        departures.push_back({l, value});
      } else {
        bad(l.no, "unknown mobility parameter " + k);
      }
    }
    if (m.speed_min > m.speed_max) bad(lines.empty() ? 0 : lines.front().no, "speed_min exceeds speed_max");
  }

  void nodes(const std::vector<Line>& lines, const NodeKnobs& defaults) {
    for (const auto& l : lines) {
      auto parts = text::split_ws(l.text);
      if (parts.size() < 3) {
        syntax(l.no, "expected: label x y [key=value ...]");
        continue;
      }
      std::string label(parts[0]);
      if (!is_valid_label(label)) {
        bad(l.no, "invalid label " + label);
        continue;
      }
      if (spec.find(label)) {
        error(ScenarioErrorKind::DuplicateLabel, l.no, "duplicate label " + label);
        continue;
      }
      auto x = text::parse_double(parts[1]);
      auto y = text::parse_double(parts[2]);
      if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) {
        bad(l.no, "bad position for " + label);
        continue;
      }
      NodeKnobs k = defaults;
      std::set<std::string_view> seen;
      for (std::size_t i = 3; i < parts.size(); ++i) {
        auto eq = parts[i].find('=');
        if (eq == std::string_view::npos) {
          syntax(l.no, "expected key=value, got " + std::string(parts[i]));
          continue;
        }
        auto key = parts[i].substr(0, eq);
        auto value = parts[i].substr(eq + 1);
        const Knob* knob = find_knob(key);
        if (!knob) bad(l.no, "unknown node parameter " + std::string(key));
        else if (!seen.insert(key).second) bad(l.no, "duplicate key " + std::string(key));
        else if (!knob->set(k, value)) bad(l.no, "bad value for " + std::string(key) + ": " + std::string(value));
      }
      NodeSpec n;
      n.id = NodeId{static_cast<std::uint32_t>(spec.nodes.size())};
      n.label = label;
      n.position = Position{*x, *y};
      n.params = k.params;
      n.capacity_pps = k.capacity_pps;
      n.queue_len_max = k.queue_len_max;
      spec.nodes.push_back(std::move(n));
    }
  }

  std::optional<NodeId> node_ref(std::size_t line, std::string_view label) {
    auto id = spec.find(label);
    if (!id) error(ScenarioErrorKind::UnknownNode, line, "unknown node " + std::string(label));
    return id;
  }

  void resolve_departures() {
    for (const auto& [l, value] : departures) {
      auto parts = text::split_ws(value);
      if (parts.size() != 2) {
        syntax(l.no, "expected: depart = label time_ms");
        continue;
      }
      auto id = node_ref(l.no, parts[0]);
      auto at = text::parse_ms(parts[1]);
      if (!at || *at < 0) bad(l.no, "bad departure time " + std::string(parts[1]));
      if (id && at) spec.mobility.departures.push_back(Departure{*id, *at});
    }
  }

  void flows(const std::vector<Line>& lines) {
    for (const auto& l : lines) {
      auto parts = text::split_ws(l.text);
      if (parts.size() < 5) {
        syntax(l.no, "expected: src dst start_ms rate_pps payload [stop_ms=T] [pattern=cbr|poisson]");
        continue;
      }
      auto src = node_ref(l.no, parts[0]);
      auto dst = node_ref(l.no, parts[1]);
      Flow f;
      bool ok = src && dst;
      auto start = text::parse_ms(parts[2]);
      auto rate = text::parse_double(parts[3]);
      auto payload = text::parse_uint(parts[4]);
      if (!start || *start < 0) bad(l.no, "bad start time " + std::string(parts[2])), ok = false;
      if (!rate || !(*rate > 0) || !std::isfinite(*rate))
        bad(l.no, "rate_pps must be positive, got " + std::string(parts[3])), ok = false;
      if (!payload || *payload > 0xffffffffULL) bad(l.no, "bad payload " + std::string(parts[4])), ok = false;
      if (src && dst && *src == *dst) bad(l.no, "flow source and destination are the same node"), ok = false;
      std::set<std::string_view> seen;
      for (std::size_t i = 5; i < parts.size(); ++i) {
        auto eq = parts[i].find('=');
        auto key = eq == std::string_view::npos ? parts[i] : parts[i].substr(0, eq);
        auto value = eq == std::string_view::npos ? std::string_view{} : parts[i].substr(eq + 1);
        if (eq == std::string_view::npos) {
          syntax(l.no, "expected key=value, got " + std::string(parts[i]));
          ok = false;
        } else if (!seen.insert(key).second) {
          bad(l.no, "duplicate key " + std::string(key));
          ok = false;
        } else if (key == "stop_ms") {
          auto stop = text::parse_ms(value);
          if (!stop || (start && *stop <= *start)) bad(l.no, "stop_ms must be after start"), ok = false;
          else f.stop_at = *stop;
        } else if (key == "pattern") {
          auto p = parse_traffic_pattern(value);
          if (!p) bad(l.no, "pattern must be cbr or poisson"), ok = false;
          else f.pattern = *p;
        } else {
          bad(l.no, "unknown flow parameter " + std::string(key));
          ok = false;
        }
      }
      if (!ok) continue;
      f.src = *src;
      f.dst = *dst;
      f.start_at = *start;
      f.rate_pps = *rate;
      f.payload = static_cast<std::uint32_t>(*payload);
      spec.flows.push_back(f);
    }
  }

  void index_table(const std::vector<Line>& lines) {
    IndexSnapshot snap;
    bool observer = false;
    std::set<NodeId> seen;
    for (const auto& l : lines) {
      auto eq = l.text.find('=');
      if (eq != std::string_view::npos) {
        auto key = text::trim(l.text.substr(0, eq));
        auto value = text::trim(l.text.substr(eq + 1));
        if (key != "observer") {
          bad(l.no, "unknown index_table parameter " + std::string(key));
        } else if (observer) {
          bad(l.no, "duplicate key observer");
        } else if (auto id = node_ref(l.no, value)) {
          snap.observer = *id;
          observer = true;
        }
        continue;
      }
      auto parts = text::split_ws(l.text);
      if (parts.size() != 2) {
        syntax(l.no, "expected: label index");
        continue;
      }
      auto id = node_ref(l.no, parts[0]);
      auto v = text::parse_uint(parts[1]);
      if (!v || *v > 0xffffffffULL) {
        bad(l.no, "bad index " + std::string(parts[1]));
        continue;
      }
      if (!id) continue;
      if (!seen.insert(*id).second) {
        bad(l.no, "duplicate index entry for " + std::string(parts[0]));
        continue;
      }
      snap.values.emplace_back(*id, static_cast<std::uint32_t>(*v));
    }
    if (!observer) bad(lines.empty() ? 0 : lines.front().no, "index_table needs an observer");
    spec.index_table = std::move(snap);
  }
};

}  // namespace

ScenarioSpec parse_scenario(std::string_view text) {
  static const std::vector<std::string_view> kSections = {"params", "medium", "mobility",
                                                          "nodes",  "flows",  "index_table"};
  Parser p;
  std::map<std::string_view, std::vector<Line>> sections;
  std::map<std::string_view, std::size_t> section_line;
  std::string_view current;
  bool after_bad_header = false;

  std::size_t no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = text::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        p.syntax(no, "unterminated section header");
        current = {};
        after_bad_header = true;
        continue;
      }
      auto name = text::trim(line.substr(1, line.size() - 2));
      auto known = std::find(kSections.begin(), kSections.end(), name);
      if (known == kSections.end()) {
        p.syntax(no, "unknown section [" + std::string(name) + "]");
        current = {};
        after_bad_header = true;
      } else if (section_line.contains(*known)) {
        p.syntax(no, "section [" + std::string(name) + "] appears twice");
        current = {};
        after_bad_header = true;
      } else {
        current = *known;
        section_line[current] = no;
        sections[current];
      }
      continue;
    }
    if (current.empty()) {
      if (!after_bad_header) p.syntax(no, "content outside any section");
      continue;
    }
    sections[current].push_back(Line{no, line});
  }

  for (std::string_view required : {"nodes", "medium"})
    if (!section_line.contains(required)) p.syntax(0, "missing section [" + std::string(required) + "]");

  NodeKnobs defaults;
  p.params(sections["params"], defaults);
  p.spec.defaults = defaults.params;
  p.spec.default_capacity_pps = defaults.capacity_pps;
  p.spec.default_queue_len_max = defaults.queue_len_max;
  p.medium(sections["medium"]);
  p.mobility(sections["mobility"]);
  p.nodes(sections["nodes"], defaults);
  if (section_line.contains("nodes") && p.spec.nodes.empty()) p.syntax(section_line["nodes"], "no nodes declared");
  p.resolve_departures();
  p.flows(sections["flows"]);
  if (section_line.contains("index_table")) p.index_table(sections["index_table"]);

  if (!p.issues.empty()) {
    std::stable_sort(p.issues.begin(), p.issues.end(),
                     [](const ScenarioIssue& a, const ScenarioIssue& b) { return a.line < b.line; });
    throw ScenarioError(std::move(p.issues));
  }
  return std::move(p.spec);
}

std::string render_scenario(const ScenarioSpec& spec) {
  const NodeNames names = spec.names();
  std::ostringstream out;
  NodeKnobs defaults{spec.defaults, spec.default_capacity_pps, spec.default_queue_len_max};

  out << "[params]\n";
  out << "name = " << spec.name << '\n';
  out << "protocol = " << to_string(spec.protocol) << '\n';
  out << "seed = " << spec.seed << '\n';
  out << "duration_ms = " << text::format_ms(spec.duration) << '\n';
  for (const auto& k : node_knobs()) out << k.key << " = " << k.get(defaults) << '\n';

  out << "\n[medium]\n";
  out << "range = " << text::format_double(spec.medium.range) << '\n';
  out << "latency_ms = " << text::format_ms(spec.medium.per_hop_latency) << '\n';
  out << "loss_rate = " << text::format_double(spec.medium.loss_rate) << '\n';

  const auto& m = spec.mobility;
  out << "\n[mobility]\n";
  out << "model = " << to_string(m.model) << '\n';
  out << "step_ms = " << text::format_ms(m.step) << '\n';
  out << "speed_min = " << text::format_double(m.speed_min) << '\n';
  out << "speed_max = " << text::format_double(m.speed_max) << '\n';
  out << "pause_ms = " << text::format_ms(m.pause) << '\n';
  out << "area = " << text::format_double(m.area_w) << ' ' << text::format_double(m.area_h) << '\n';
  for (const auto& d : m.departures) out << "depart = " << names.label(d.node) << ' ' << text::format_ms(d.at) << '\n';

  out << "\n[nodes]\n";
  for (const auto& n : spec.nodes) {
    out << n.label << ' ' << text::format_double(n.position.x) << ' ' << text::format_double(n.position.y);
    NodeKnobs mine{n.params, n.capacity_pps, n.queue_len_max};
    for (const auto& k : node_knobs()) {
      auto v = k.get(mine);
      if (v != k.get(defaults)) out << ' ' << k.key << '=' << v;
    }
    out << '\n';
  }

  out << "\n[flows]\n";
  for (const auto& f : spec.flows) {
    out << names.label(f.src) << ' ' << names.label(f.dst) << ' ' << text::format_ms(f.start_at) << ' '
        << text::format_double(f.rate_pps) << ' ' << f.payload;
    if (f.stop_at) out << " stop_ms=" << text::format_ms(*f.stop_at);
    if (f.pattern != TrafficPattern::Cbr) out << " pattern=" << to_string(f.pattern);
    out << '\n';
  }

  if (spec.index_table) {
    out << "\n[index_table]\n";
    out << "observer = " << names.label(spec.index_table->observer) << '\n';
    for (const auto& [node, idx] : spec.index_table->values) out << names.label(node) << ' ' << idx << '\n';
  }
  return std::move(out).str();
}

std::uint64_t scenario_hash(const ScenarioSpec& spec) {
  ScenarioSpec neutral = spec;
  neutral.protocol = Protocol::CiAodv;
  return text::fnv1a(render_scenario(neutral));
}

bool is_connected(const std::vector<Position>& positions, double range) {
  if (positions.empty()) return true;
  Medium medium(MediumParams{range, 0, 0}, positions);
  std::vector<bool> seen(positions.size(), false);
  std::vector<NodeId> stack = {NodeId{0}};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    for (NodeId m : medium.neighbors_of(n)) {
      if (seen[m.value]) continue;
      seen[m.value] = true;
      ++reached;
      stack.push_back(m);
    }
  }
  return reached == positions.size();
}

ScenarioSpec random_scenario(const GenParams& g, std::uint64_t seed) {
  if (g.min_nodes < 2 || g.max_nodes < g.min_nodes || !(g.range > 0) || !(g.degree > 0) || g.limits.empty() ||
      g.max_flows < g.min_flows || g.duration < from_ms(1000))
    throw std::invalid_argument("random_scenario: implausible generation parameters");

  Rng rng = make_stream(seed, Stream::Generator);
  const auto n = static_cast<std::uint32_t>(g.min_nodes + rng.below(g.max_nodes - g.min_nodes + 1));
  const double side = g.range * std::sqrt((n - 1) * std::numbers::pi / g.degree);

  std::vector<Position> positions(n);
  bool connected = false;
  for (std::uint32_t attempt = 0; attempt < g.max_attempts && !connected; ++attempt) {
    for (auto& p : positions) p = Position{rng.uniform(0, side), rng.uniform(0, side)};
    connected = is_connected(positions, g.range);
  }
  if (!connected)
    throw GenerationFailed("no connected placement of " + std::to_string(n) + " nodes after " +
                           std::to_string(g.max_attempts) + " attempts");

  ScenarioSpec s;
  s.name = "random-" + std::to_string(seed);
  s.protocol = g.protocol;
  s.seed = seed;
  s.duration = g.duration;
  s.defaults.route_limit = g.limits.front();
  s.medium.range = g.range;
  s.medium.loss_rate = g.loss_rate;
  if (g.mobility) {
    s.mobility.model = MobilityModel::RandomWaypoint;
    s.mobility.step = from_ms(250);
    s.mobility.speed_min = g.speed_min;
    s.mobility.speed_max = g.speed_max;
    s.mobility.pause = from_ms(2000);
    s.mobility.area_w = side;
    s.mobility.area_h = side;
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    NodeSpec node;
    node.id = NodeId{i};
    node.label = "N" + std::to_string(i);
    node.position = positions[i];
    node.params = s.defaults;
    node.params.route_limit = g.limits[rng.below(g.limits.size())];
    node.capacity_pps = s.default_capacity_pps;
    node.queue_len_max = s.default_queue_len_max;
    s.nodes.push_back(std::move(node));
  }

  const std::uint64_t pairs = std::uint64_t{n} * (n - 1);
  const auto max_flows = static_cast<std::uint32_t>(std::min<std::uint64_t>(g.max_flows, pairs));
  const auto min_flows = std::min(g.min_flows, max_flows);
  const auto flow_count = static_cast<std::uint32_t>(min_flows + rng.below(max_flows - min_flows + 1));
  const std::int64_t duration_ms = g.duration / kMicrosPerMilli;
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  while (s.flows.size() < flow_count) {
    auto a = static_cast<std::uint32_t>(rng.below(n));
    auto b = static_cast<std::uint32_t>(rng.below(n));
    if (a == b || !used.insert({a, b}).second) continue;
    Flow f;
    f.src = NodeId{a};
    f.dst = NodeId{b};
    f.start_at = from_ms(500 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(duration_ms / 2))));
    f.rate_pps = static_cast<double>(1 + rng.below(20));
    f.payload = 512;
    f.pattern = rng.bernoulli(0.5) ? TrafficPattern::Poisson : TrafficPattern::Cbr;
    if (rng.bernoulli(0.5))
      f.stop_at = f.start_at + from_ms(1000 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(duration_ms / 2))));
    s.flows.push_back(f);
  }
  return s;
}

}  // namespace ciaodv
