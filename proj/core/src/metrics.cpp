#include "ciaodv/metrics.hpp"

#include <map>
#include <set>
#include <sstream>

#include "ciaodv/codec.hpp"
#include "ciaodv/scenario.hpp"
#include "ciaodv/text.hpp"

namespace ciaodv {

namespace {

struct FlowAcc {
  FlowMetrics m;
  NodeId src;
  NodeId dst;
  std::optional<SimTime> start;
  std::optional<SimTime> stop;
  double latency_sum_ms = 0;

  bool active(SimTime at) const { return start && at >= *start && (!stop || at < *stop); }
};

std::uint64_t num(const TraceEvent& e, std::string_view key) {
  auto v = text::parse_uint(e.require(key));
  if (!v) throw MalformedTrace(0, "field " + std::string(key) + " is not a number");
  return *v;
}

SimTime ms(const TraceEvent& e, std::string_view key) {
  auto v = text::parse_ms(e.require(key));
  if (!v) throw MalformedTrace(0, "field " + std::string(key) + " is not a time");
  return *v;
}

NodeId node_field(const TraceEvent& e, std::string_view key, const NodeNames& names) {
  auto id = names.find(e.require(key));
  if (!id) throw MalformedTrace(0, "unknown node " + e.require(key));
  return *id;
}

template <class T>
T* flow_at(std::vector<T>& flows, std::uint64_t i) {
  if (i >= flows.size()) throw MalformedTrace(0, "event for undeclared flow " + std::to_string(i));
  return &flows[i];
}

}  // namespace

MetricsReport compute_report(const SimTrace& trace) {
  MetricsReport r;
  r.scenario_hash = trace.header.scenario_hash;
  r.seed = trace.header.seed;
  const NodeNames names = trace.names();

  std::vector<FlowAcc> flows;
  if (!trace.header.scenario.empty()) {
    ScenarioSpec spec;
    try {
      spec = parse_scenario(trace.header.scenario);
    } catch (const ScenarioError& e) {
      throw MalformedTrace(0, std::string("embedded scenario: ") + e.what());
    }
    for (std::uint32_t i = 0; i < spec.flows.size(); ++i) {
      FlowAcc a;
      a.m.flow = i;
      a.src = spec.flows[i].src;
      a.dst = spec.flows[i].dst;
      a.m.src = spec.nodes.at(a.src.value).label;
      a.m.dst = spec.nodes.at(a.dst.value).label;
      flows.push_back(std::move(a));
    }
  } else {
    // Hand-made trace without a scenario: flows are declared by fstart.
    for (const auto& e : trace.events) {
      if (e.kind != TraceKind::Fstart) continue;
      auto i = num(e, "flow");
      if (i >= flows.size()) flows.resize(i + 1);
      flows[i].m.flow = static_cast<std::uint32_t>(i);
      flows[i].src = e.node;
      flows[i].dst = node_field(e, "dest", names);
      flows[i].m.src = names.label(e.node);
      flows[i].m.dst = names.label(flows[i].dst);
    }
  }

  auto for_pair = [&](NodeId src, NodeId dst, SimTime at, auto&& fn) {
    for (auto& f : flows)
      if (f.src == src && f.dst == dst && f.active(at)) fn(f);
  };

  GlobalMetrics& g = r.global;
  std::set<std::pair<NodeId, NodeId>> ever_established;
  for (const auto& e : trace.events) {
    switch (e.kind) {
      case TraceKind::Tx:
        if (!e.msg) throw MalformedTrace(0, "tx without message kind");
        ++g.control_by_kind[static_cast<std::size_t>(*e.msg)];
        ++g.control_total;
        break;
      case TraceKind::Fstart:
        flow_at(flows, num(e, "flow"))->start = e.at;
        flow_at(flows, num(e, "flow"))->stop.reset();
        break;
      case TraceKind::Fstop:
        flow_at(flows, num(e, "flow"))->stop = e.at;
        break;
      case TraceKind::Dgen:
        ++flow_at(flows, num(e, "flow"))->m.offered;
        break;
      case TraceKind::Drecv: {
        FlowAcc* f = flow_at(flows, num(e, "flow"));
        ++f->m.delivered;
        f->latency_sum_ms += to_ms(e.at - ms(e, "born"));
        break;
      }
      case TraceKind::Ddrop:
        ++flow_at(flows, num(e, "flow"))->m.dropped;
        break;
      case TraceKind::Estab: {
        ++g.admissions;
        NodeId dst = node_field(e, "dest", names);
        ever_established.insert({e.node, dst});
        for_pair(e.node, dst, e.at, [&](FlowAcc& f) {
          if (f.m.established) return;
          f.m.established = true;
          f.m.discovery_latency_ms = to_ms(e.at - *f.start);
        });
        break;
      }
      case TraceKind::Reject: {
        ++g.rejections;
        for_pair(e.node, node_field(e, "dest", names), e.at, [](FlowAcc& f) { ++f.m.rejections; });
        break;
      }
      case TraceKind::Fail: {
        auto reason = parse_failure_reason(e.require("reason"));
        if (!reason) throw MalformedTrace(0, "bad failure reason " + e.require("reason"));
        for_pair(e.node, node_field(e, "dest", names), e.at, [&](FlowAcc& f) { f.m.failure_reason = *reason; });
        break;
      }
      case TraceKind::Release: {
        RouteId id;
        try {
          id = decode_route_id(e.require("route"), names);
        } catch (const CodecError& err) {
          throw MalformedTrace(0, err.what());
        }
        if (id.source != e.node) break;
        ++g.teardowns;
        if (e.require("cause") == to_string(TeardownReason::Break)) ++g.route_breaks;
        break;
      }
      case TraceKind::Disc:
        if (num(e, "attempt") == 1 && ever_established.contains({e.node, node_field(e, "dest", names)}))
          ++g.rediscoveries;
        break;
      default:
        break;
    }
  }

  for (auto& f : flows) {
    FlowMetrics& m = f.m;
    if (m.delivered + m.dropped > m.offered) throw MalformedTrace(0, "flow " + std::to_string(m.flow) + " over-accounted");
    m.in_flight = m.offered - m.delivered - m.dropped;
    m.pdr = m.offered ? static_cast<double>(m.delivered) / static_cast<double>(m.offered) : 0.0;
    m.mean_latency_ms = m.delivered ? f.latency_sum_ms / static_cast<double>(m.delivered) : 0.0;
    g.offered += m.offered;
    g.delivered += m.delivered;
    g.dropped += m.dropped;
    g.in_flight += m.in_flight;
    if (m.established) ++g.established_flows;
    r.flows.push_back(std::move(m));
  }
  g.control_overhead_ratio =
      g.delivered ? static_cast<double>(g.control_total) / static_cast<double>(g.delivered) : 0.0;
  g.live_routes = static_cast<std::int64_t>(g.admissions) - static_cast<std::int64_t>(g.teardowns);
  return r;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "row",           "src",          "dst",          "offered",          "delivered",
      "dropped",       "in_flight",    "pdr",          "mean_latency_ms",  "discovery_latency_ms",
      "established",   "rejections",   "failure_reason", "ctrl_rreq",      "ctrl_rrep",
      "ctrl_rerr",     "ctrl_hello",   "ctrl_activate", "ctrl_teardown",   "control_total",
      "control_overhead_ratio", "admissions", "teardowns", "route_breaks",  "rediscoveries",
      "live_routes"};
  return cols;
}

std::vector<std::vector<std::string>> csv_rows(const MetricsReport& r) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& f : r.flows) {
    std::vector<std::string> row = {
        std::to_string(f.flow),
        f.src,
        f.dst,
        std::to_string(f.offered),
        std::to_string(f.delivered),
        std::to_string(f.dropped),
        std::to_string(f.in_flight),
        text::format_fixed(f.pdr, 6),
        text::format_fixed(f.mean_latency_ms, 3),
        f.discovery_latency_ms ? text::format_fixed(*f.discovery_latency_ms, 3) : "",
        f.established ? "1" : "0",
        std::to_string(f.rejections),
        f.failure_reason ? std::string(to_string(*f.failure_reason)) : ""};
    row.resize(csv_columns().size());
    rows.push_back(std::move(row));
  }
  const auto& g = r.global;
  std::vector<std::string> row = {"GLOBAL",
                                  "",
                                  "",
                                  std::to_string(g.offered),
                                  std::to_string(g.delivered),
                                  std::to_string(g.dropped),
                                  std::to_string(g.in_flight),
                                  text::format_fixed(g.offered ? static_cast<double>(g.delivered) / g.offered : 0.0, 6),
                                  "",
                                  "",
                                  std::to_string(g.established_flows),
                                  std::to_string(g.rejections),
                                  ""};
  for (auto c : g.control_by_kind) row.push_back(std::to_string(c));
  row.push_back(std::to_string(g.control_total));
  row.push_back(text::format_fixed(g.control_overhead_ratio, 6));
  row.push_back(std::to_string(g.admissions));
  row.push_back(std::to_string(g.teardowns));
  row.push_back(std::to_string(g.route_breaks));
  row.push_back(std::to_string(g.rediscoveries));
  row.push_back(std::to_string(g.live_routes));
  rows.push_back(std::move(row));
  return rows;
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i];
  }
  return s;
}

}  // namespace

std::string report_csv(const MetricsReport& r) {
  std::ostringstream out;
  out << kMetricsMagic << " scenario=" << text::to_hex(r.scenario_hash) << " seed=" << r.seed << '\n';
  out << join(csv_columns()) << '\n';
  for (const auto& row : csv_rows(r)) out << join(row) << '\n';
  return std::move(out).str();
}

std::string report_lines(const MetricsReport& r) {
  std::ostringstream out;
  out << kMetricsMagic << " scenario=" << text::to_hex(r.scenario_hash) << " seed=" << r.seed << '\n';
  const auto& cols = csv_columns();
  for (const auto& row : csv_rows(r)) {
    out << (row[0] == "GLOBAL" ? "global" : "flow " + row[0] + " " + row[1] + "->" + row[2]);
    for (std::size_t i = 3; i < cols.size(); ++i)
      if (!row[i].empty()) out << ' ' << cols[i] << '=' << row[i];
    out << '\n';
  }
  return std::move(out).str();
}

ComparisonTable compare(const MetricsReport& a, const MetricsReport& b, std::string a_label, std::string b_label) {
  if (a.scenario_hash != b.scenario_hash)
    throw ScenarioMismatch("reports come from different scenarios (" + text::to_hex(a.scenario_hash) + " vs " +
                           text::to_hex(b.scenario_hash) + ")");
  if (a.flows.size() != b.flows.size()) throw ScenarioMismatch("reports disagree on the flow set");

  ComparisonTable t;
  t.scenario_hash = a.scenario_hash;
  t.a_label = std::move(a_label);
  t.b_label = std::move(b_label);
  auto add = [&](std::string metric, double x, double y) { t.rows.push_back({std::move(metric), x, y, y - x}); };
  auto u = [](auto v) { return static_cast<double>(v); };

  const auto& ga = a.global;
  const auto& gb = b.global;
  add("offered", u(ga.offered), u(gb.offered));
  add("delivered", u(ga.delivered), u(gb.delivered));
  add("dropped", u(ga.dropped), u(gb.dropped));
  add("in_flight", u(ga.in_flight), u(gb.in_flight));
  add("pdr", ga.offered ? u(ga.delivered) / u(ga.offered) : 0.0, gb.offered ? u(gb.delivered) / u(gb.offered) : 0.0);
  add("established_flows", u(ga.established_flows), u(gb.established_flows));
  for (std::size_t k = 0; k < kMessageKindCount; ++k) {
    std::string name(to_string(static_cast<MessageKind>(k)));
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    add("ctrl_" + name, u(ga.control_by_kind[k]), u(gb.control_by_kind[k]));
  }
  add("control_total", u(ga.control_total), u(gb.control_total));
  add("control_overhead_ratio", ga.control_overhead_ratio, gb.control_overhead_ratio);
  add("admissions", u(ga.admissions), u(gb.admissions));
  add("rejections", u(ga.rejections), u(gb.rejections));
  add("teardowns", u(ga.teardowns), u(gb.teardowns));
  add("route_breaks", u(ga.route_breaks), u(gb.route_breaks));
  add("rediscoveries", u(ga.rediscoveries), u(gb.rediscoveries));
  add("live_routes", u(ga.live_routes), u(gb.live_routes));

  for (std::size_t i = 0; i < a.flows.size(); ++i) {
    const auto& fa = a.flows[i];
    const auto& fb = b.flows[i];
    const std::string p = "flow" + std::to_string(fa.flow) + ".";
    add(p + "offered", u(fa.offered), u(fb.offered));
    add(p + "delivered", u(fa.delivered), u(fb.delivered));
    add(p + "pdr", fa.pdr, fb.pdr);
    add(p + "mean_latency_ms", fa.mean_latency_ms, fb.mean_latency_ms);
    add(p + "established", fa.established ? 1.0 : 0.0, fb.established ? 1.0 : 0.0);
    add(p + "rejections", u(fa.rejections), u(fb.rejections));
  }
  return t;
}

std::string comparison_csv(const ComparisonTable& t) {
  std::ostringstream out;
  out << "# ciaodv-compare v1 scenario=" << text::to_hex(t.scenario_hash) << " a=" << t.a_label << " b=" << t.b_label << '\n';
  out << "metric,a,b,delta\n";
  for (const auto& r : t.rows)
    out << r.metric << ',' << text::format_fixed(r.a, 6) << ',' << text::format_fixed(r.b, 6) << ','
        << text::format_fixed(r.delta, 6) << '\n';
  return std::move(out).str();
}

std::string comparison_lines(const ComparisonTable& t) {
  std::ostringstream out;
  out << "# ciaodv-compare v1 scenario=" << text::to_hex(t.scenario_hash) << " a=" << t.a_label << " b=" << t.b_label << '\n';
  for (const auto& r : t.rows)
    out << r.metric << ' ' << text::format_fixed(r.a, 6) << " -> " << text::format_fixed(r.b, 6)
        << " delta=" << text::format_fixed(r.delta, 6) << '\n';
  return std::move(out).str();
}

}  // namespace ciaodv
