#include "ciaodv/builtin.hpp"

namespace ciaodv {

UnknownScenario::UnknownScenario(std::string_view name)
    : std::invalid_argument("unknown scenario: " + std::string(name)) {}

namespace {

struct Placement {
  const char* label;
  double x;
  double y;
};

ScenarioSpec base(std::string name, std::initializer_list<Placement> nodes) {
  ScenarioSpec s;
  s.name = std::move(name);
  s.protocol = Protocol::CiAodv;
  s.seed = 1;
  s.duration = from_ms(10000);
  s.defaults.route_limit = RouteLimit::at_most(2);
  s.medium.range = 100;
  for (const auto& p : nodes) {
    NodeSpec n;
    n.id = NodeId{static_cast<std::uint32_t>(s.nodes.size())};
    n.label = p.label;
    n.position = Position{p.x, p.y};
    n.params = s.defaults;
    n.capacity_pps = s.default_capacity_pps;
    n.queue_len_max = s.default_queue_len_max;
    s.nodes.push_back(std::move(n));
  }
  return s;
}

void add_flow(ScenarioSpec& s, std::string_view src, std::string_view dst, std::int64_t start_ms, double rate) {
  Flow f;
  f.src = *s.find(src);
  f.dst = *s.find(dst);
  f.start_at = from_ms(start_ms);
  f.rate_pps = rate;
  s.flows.push_back(f);
}

ScenarioSpec fig1() {
  auto s = base("fig1", {{"S", 0, 0}, {"N1", 90, 10}, {"N2", 180, 0}, {"N3", 270, 10}, {"D", 360, 0}});
  add_flow(s, "S", "D", 1000, 10);
  return s;
}

ScenarioSpec fig2() {
  auto s = base("fig2", {{"S", 0, 0},
                         {"N4", 90, 0},
                         {"N5", 160, 60},
                         {"D1", 250, 20},
                         {"N6", 160, -60},
                         {"N7", 240, -60},
                         {"D2", 320, -100}});
  add_flow(s, "S", "D1", 1000, 10);
  add_flow(s, "S", "D2", 2000, 10);
  return s;
}

ScenarioSpec fig3(std::string name = "fig3") {
  auto s = base(std::move(name), {{"S", 0, 0},
                                  {"N1", -90, 0},
                                  {"N2", 90, 0},
                                  {"N3", 110, 90},
                                  {"N4", 150, 180},
                                  {"D1", 240, 220},
                                  {"N5", 110, -90},
                                  {"N6", 150, -180},
                                  {"N7", 230, -230},
                                  {"D2", 320, -260},
                                  {"N8", 185, 0},
                                  {"N9", 280, 0},
                                  {"D3", 375, 0},
                                  {"N10", 280, 90}});
  add_flow(s, "S", "D1", 1000, 10);
  add_flow(s, "S", "D2", 2000, 10);
  add_flow(s, "S", "D3", 4000, 10);
  return s;
}

ScenarioSpec table1() {
  auto s = fig3("table1");
  IndexSnapshot snap;
  snap.observer = *s.find("S");
  for (auto [label, idx] : std::initializer_list<std::pair<const char*, std::uint32_t>>{
           {"S", 1}, {"N1", 0}, {"N2", 2}, {"N3", 1}, {"N4", 1}, {"N5", 1}, {"N6", 1},
           {"N7", 1}, {"N8", 1}, {"N9", 1}, {"N10", 0}, {"D1", 1}, {"D2", 1}, {"D3", 0}})
    snap.values.emplace_back(*s.find(label), idx);
  s.index_table = std::move(snap);
  return s;
}

}  // namespace

ScenarioSpec star_relay(std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("star_relay needs at least one flow");
  ScenarioSpec s = base("star_relay", {{"R", 0, 0}});
  s.name = k == 4 ? "star_relay" : "star_relay_" + std::to_string(k);
  s.duration = from_ms(60000);
  s.medium.range = 150;
  constexpr double kRate = 50;
  s.nodes[0].capacity_pps = 2 * kRate;
  // Relay spacing keeps every source-sink pair out of direct range.
  auto y_of = [k](std::uint32_t i) { return 40.0 * i - 20.0 * (k - 1); };
  for (const char* side : {"S", "D"}) {
    for (std::uint32_t i = 0; i < k; ++i) {
      NodeSpec n;
      n.id = NodeId{static_cast<std::uint32_t>(s.nodes.size())};
      n.label = side + std::to_string(i + 1);
      n.position = Position{side[0] == 'S' ? -100.0 : 100.0, y_of(i)};
      n.params = s.defaults;
      n.capacity_pps = s.default_capacity_pps;
      n.queue_len_max = s.default_queue_len_max;
      s.nodes.push_back(std::move(n));
    }
  }
  for (std::uint32_t i = 0; i < k; ++i) {
    add_flow(s, "S" + std::to_string(i + 1), "D" + std::to_string(i + 1), 1000 * (i + 1), kRate);
    s.flows.back().pattern = TrafficPattern::Poisson;
  }
  return s;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"fig1", "fig2", "fig3", "table1", "star_relay"};
  return names;
}

ScenarioSpec builtin(std::string_view name) {
  if (name == "fig1") return fig1();
  if (name == "fig2") return fig2();
  if (name == "fig3") return fig3();
  if (name == "table1") return table1();
  if (name == "star_relay") return star_relay(4);
  throw UnknownScenario(name);
}

}  // namespace ciaodv
