#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <mutex>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "ciaodv/builtin.hpp"
#include "ciaodv/metrics.hpp"
#include "ciaodv/simulator.hpp"
#include "ciaodv/text.hpp"

namespace ciaodv::cli {

ScenarioSpec load_scenario(std::string_view ref) {
  const auto& names = builtin_names();
  if (std::find(names.begin(), names.end(), ref) != names.end()) return builtin(ref);
  const std::filesystem::path path{std::string(ref)};
  std::ifstream in(path);
  if (!in) throw UserError("scenario file not found: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ScenarioError& e) {
    throw UserError(path.string() + ":\n" + e.what());
  }
}

namespace {

struct Common {
  std::string scenario;
  std::string protocol;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> duration_ms;
  std::string report_out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& c, bool with_protocol) {
  cmd->add_option("--scenario", c.scenario, "built-in name or scenario file")->required();
  if (with_protocol)
    cmd->add_option("--protocol", c.protocol, "aodv (baseline) or ci-aodv (ci); default from scenario");
  cmd->add_option("--seed", c.seed, "override the scenario seed");
  cmd->add_option("--duration-ms", c.duration_ms, "override the scenario duration")->check(CLI::PositiveNumber);
  cmd->add_option("--report-out", c.report_out, "write the report here instead of stdout");
  cmd->add_option("--format", c.format, "report format")->check(CLI::IsMember({"csv", "lines"}));
}

ScenarioSpec prepared(const Common& c) {
  ScenarioSpec spec = load_scenario(c.scenario);
  if (!c.protocol.empty()) {
    auto p = parse_protocol(c.protocol);
    if (!p) throw UserError("unknown protocol: " + c.protocol);
    spec.protocol = *p;
  }
  if (c.seed) spec.seed = *c.seed;
  if (c.duration_ms) spec.duration = from_ms(*c.duration_ms);
  return spec;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UserError("cannot write " + path);
  out << content;
  if (!out) throw UserError("cannot write " + path);
}

void emit(const Common& c, const std::string& content, std::ostream& out) {
  if (c.report_out.empty()) out << content;
  else write_file(c.report_out, content);
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> seeds;
  for (auto part : text::split(s, ',')) {
    part = text::trim(part);
    auto dash = part.find('-');
    if (dash != std::string_view::npos && dash > 0) {
      auto lo = text::parse_uint(part.substr(0, dash));
      auto hi = text::parse_uint(part.substr(dash + 1));
      if (!lo || !hi || *lo > *hi || *hi - *lo > 100000) throw UserError("bad seed range: " + std::string(part));
      for (auto v = *lo; v <= *hi; ++v) seeds.push_back(v);
    } else {
      auto v = text::parse_uint(part);
      if (!v) throw UserError("bad seed: " + std::string(part));
      seeds.push_back(*v);
    }
  }
  return seeds;
}

/// Applies one sweep value to a copy of the scenario.
ScenarioSpec with_value(ScenarioSpec spec, const std::string& param, const std::string& value) {
  if (param == "route_limit") {
    auto limit = RouteLimit::parse(value);
    if (!limit) throw UserError("bad route_limit value: " + value);
    spec.set_route_limit(*limit);
  } else if (param == "flow_count") {
    auto n = text::parse_uint(value);
    if (!n || *n > spec.flows.size())
      throw UserError("flow_count must be at most " + std::to_string(spec.flows.size()) + ", got " + value);
    spec.flows.resize(*n);
  } else if (param == "loss_rate") {
    auto p = text::parse_double(value);
    if (!p || !(*p >= 0 && *p <= 1)) throw UserError("loss_rate must be in [0, 1], got " + value);
    spec.medium.loss_rate = *p;
  } else {
    throw UserError("unknown sweep parameter: " + param);
  }
  return spec;
}

int cmd_run(const Common& c, const std::string& trace_out, std::ostream& out) {
  const ScenarioSpec spec = prepared(c);
  Simulator sim(spec);
  const SimTrace& trace = sim.run_until(spec.duration);
  if (!trace_out.empty()) write_file(trace_out, render_trace(trace));
  const MetricsReport report = compute_report(trace);
  emit(c, c.format == "csv" ? report_csv(report) : report_lines(report), out);
  return kExitOk;
}

int cmd_compare(const Common& c, std::ostream& out) {
  ScenarioSpec spec = prepared(c);
  spec.protocol = Protocol::Baseline;
  const MetricsReport a = compute_report(run_scenario(spec));
  spec.protocol = Protocol::CiAodv;
  const MetricsReport b = compute_report(run_scenario(spec));
  const ComparisonTable table = compare(a, b, std::string(to_string(Protocol::Baseline)),
                                        std::string(to_string(Protocol::CiAodv)));
  emit(c, c.format == "csv" ? comparison_csv(table) : comparison_lines(table), out);
  return kExitOk;
}

int cmd_sweep(const Common& c, const std::string& param, const std::vector<std::string>& values,
              const std::string& seeds_arg, std::ostream& out) {
  if (values.empty()) throw UserError("--sweep-values needs at least one value");
  const ScenarioSpec base = prepared(c);
  const std::vector<std::uint64_t> seeds = seeds_arg.empty() ? std::vector{base.seed} : parse_seeds(seeds_arg);
  if (seeds.empty()) throw UserError("--seeds needs at least one seed");

  struct Job {
    std::string value;
    ScenarioSpec spec;
    std::vector<std::string> row;
  };
  std::vector<Job> jobs;
  for (const auto& v : values) {
    ScenarioSpec spec = with_value(base, param, v);
    for (auto s : seeds) {
      spec.seed = s;
      jobs.push_back(Job{v, spec, {}});
    }
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        jobs[i].row = csv_rows(compute_report(run_scenario(jobs[i].spec))).back();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, jobs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::ostringstream s;
  s << "# ciaodv-sweep v1 scenario=" << base.name << " param=" << param << " protocol=" << to_string(base.protocol)
    << '\n';
  const auto& cols = csv_columns();
  if (c.format == "csv") {
    s << param << ",seed";
    for (std::size_t i = 1; i < cols.size(); ++i) s << ',' << cols[i];
    s << '\n';
  }
  for (const auto& j : jobs) {
    if (c.format == "csv") {
      s << j.value << ',' << j.spec.seed;
      for (std::size_t i = 1; i < j.row.size(); ++i) s << ',' << j.row[i];
    } else {
      s << param << '=' << j.value << " seed=" << j.spec.seed;
      for (std::size_t i = 3; i < j.row.size(); ++i)
        if (!j.row[i].empty()) s << ' ' << cols[i] << '=' << j.row[i];
    }
    s << '\n';
  }
  emit(c, s.str(), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ciaodv: AODV / connection-index AODV simulator"};
  app.require_subcommand(1);

  Common run_opts, cmp_opts, sweep_opts;
  std::string trace_out, sweep_param, sweep_seeds, show_name;
  std::vector<std::string> sweep_values;

  auto* run = app.add_subcommand("run", "run one scenario and report metrics");
  add_common(run, run_opts, true);
  run->add_option("--trace-out", trace_out, "write the event trace here");

  auto* cmp = app.add_subcommand("compare", "run baseline and ci-aodv on the same scenario and seed");
  add_common(cmp, cmp_opts, false);

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep; one GLOBAL row per (value, seed)");
  add_common(sweep, sweep_opts, true);
  sweep->add_option("--sweep-param", sweep_param, "parameter to vary")
      ->required()
      ->check(CLI::IsMember({"route_limit", "flow_count", "loss_rate"}));
  sweep->add_option("--sweep-values", sweep_values, "comma separated values")->required()->delimiter(',');
  sweep->add_option("--seeds", sweep_seeds, "seeds, e.g. 1,2,5-9 (default: scenario seed)");

  auto* list = app.add_subcommand("list", "list built-in scenarios");
  auto* show = app.add_subcommand("show", "print a scenario in file form");
  show->add_option("scenario", show_name, "built-in name or scenario file")->required();

  std::vector<const char*> argv = {"ciaodv"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts, trace_out, out);
    if (cmp->parsed()) return cmd_compare(cmp_opts, out);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_param, sweep_values, sweep_seeds, out);
    if (list->parsed()) {
      for (const auto& n : builtin_names()) out << n << '\n';
      return kExitOk;
    }
    if (show->parsed()) {
      out << render_scenario(load_scenario(show_name));
      return kExitOk;
    }
  } catch (const UserError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace ciaodv::cli
