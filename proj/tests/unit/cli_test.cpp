#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ciaodv/metrics.hpp"
#include "ciaodv/text.hpp"
#include "ciaodv/trace.hpp"
#include "cli.hpp"

namespace ciaodv {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, sep);) v.push_back(f);
  if (!s.empty() && s.back() == sep) v.emplace_back();
  return v;
}

std::size_t column(const std::string& header, std::string_view name) {
  const auto cols = split(header);
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (cols[i] == name) return i;
  throw std::runtime_error("no column " + std::string(name));
}

TEST(Cli, Fig3CiRejectsAndBaselineEstablishes) {
  const std::filesystem::path trace = std::filesystem::temp_directory_path() / "ciaodv_cli_fig3.trace";
  const Result ci = cli({"run", "--scenario", "fig3", "--protocol", "ci", "--format", "lines"});
  ASSERT_EQ(ci.code, 0) << ci.err;
  EXPECT_NE(ci.out.find("S->D3"), std::string::npos);
  EXPECT_NE(ci.out.find("failure_reason=admission_rejected"), std::string::npos);

  const Result base = cli({"run", "--scenario", "fig3", "--protocol", "baseline", "--trace-out", trace.string()});
  ASSERT_EQ(base.code, 0) << base.err;
  std::ifstream in(trace);
  std::stringstream text;
  text << in.rdbuf();
  const SimTrace t = parse_trace(text.str());
  EXPECT_EQ(t.header.protocol, Protocol::Baseline);
  bool found = false;
  for (const auto& e : t.events)
    if (e.kind == TraceKind::Estab && e.require("dest") == "D3") found = e.require("path") == "S,N2,N8,N9,D3";
  EXPECT_TRUE(found);
  std::filesystem::remove(trace);
}

TEST(Cli, RunCsvParsesBack) {
  const Result r = cli({"run", "--scenario", "fig1"});
  ASSERT_EQ(r.code, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0].rfind(std::string(kMetricsMagic), 0), 0u);
  EXPECT_EQ(split(l[2]).size(), csv_columns().size());
  EXPECT_EQ(split(l[3])[0], "GLOBAL");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({"run", "--scenario", "/nonexistent/file.scn"}).code, 2);
  EXPECT_EQ(cli({"run", "--scenario", "fig3", "--protocol", "ospf"}).code, 2);
  EXPECT_EQ(cli({"run"}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"sweep", "--scenario", "fig1", "--sweep-param", "route_limit", "--sweep-values", ""}).code, 2);
  EXPECT_EQ(cli({"sweep", "--scenario", "fig1", "--sweep-param", "route_limit", "--sweep-values", "zero"}).code, 2);
  EXPECT_EQ(cli({"sweep", "--scenario", "fig1", "--sweep-param", "loss_rate", "--sweep-values", "1.5"}).code, 2);
  EXPECT_EQ(cli({"show", "fig9"}).code, 2);
}

TEST(Cli, BadScenarioFileReportsLines) {
  const std::filesystem::path p = std::filesystem::temp_directory_path() / "ciaodv_cli_bad.scn";
  std::ofstream(p) << "[params]\nseed = x\n";
  const Result r = cli({"run", "--scenario", p.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  std::filesystem::remove(p);
}

TEST(Cli, SweepRouteLimitIsMonotone) {
  const Result r = cli({"sweep", "--scenario", "star_relay", "--sweep-param", "route_limit", "--sweep-values",
                        "1,2,3,unlimited", "--duration-ms", "20000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  const std::size_t col = column(l[1], "established");
  std::uint64_t prev = 0;
  for (std::size_t i = 2; i < l.size(); ++i) {
    const auto v = *text::parse_uint(split(l[i])[col]);
    EXPECT_GE(v, prev) << l[i];
    prev = v;
  }
  EXPECT_EQ(prev, 4u);
}

TEST(Cli, SingleValueSweepMatchesRun) {
  const Result sweep = cli({"sweep", "--scenario", "fig2", "--sweep-param", "route_limit", "--sweep-values", "2"});
  const Result run = cli({"run", "--scenario", "fig2"});
  ASSERT_EQ(sweep.code, 0);
  ASSERT_EQ(run.code, 0);
  const auto s = split(lines(sweep.out).back());
  const auto g = split(lines(run.out).back());
  ASSERT_EQ(s.size(), g.size() + 1);
  for (std::size_t i = 3; i < g.size(); ++i) EXPECT_EQ(s[i + 1], g[i]) << i;
}

TEST(Cli, SweepSeedsExpand) {
  const Result r = cli({"sweep", "--scenario", "fig1", "--sweep-param", "loss_rate", "--sweep-values", "0,0.1",
                        "--seeds", "1,3-4", "--duration-ms", "3000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 2u + 2 * 3);
}

TEST(Cli, OutputIsByteIdenticalAcrossInvocations) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"run", "--scenario", "fig2"}, {"compare", "--scenario", "fig3"},
        {"sweep", "--scenario", "fig3", "--sweep-param", "flow_count", "--sweep-values", "1,2,3"}}) {
    EXPECT_EQ(cli(args).out, cli(args).out);
  }
}

TEST(Cli, ReportOutWritesFile) {
  const std::filesystem::path p = std::filesystem::temp_directory_path() / "ciaodv_cli_report.csv";
  const Result r = cli({"compare", "--scenario", "fig3", "--report-out", p.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(p);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first.rfind("# ciaodv-compare v1", 0), 0u);
  std::filesystem::remove(p);
}

TEST(Cli, ListAndShow) {
  const Result l = cli({"list"});
  EXPECT_EQ(l.out, "fig1\nfig2\nfig3\ntable1\nstar_relay\n");
  const Result s = cli({"show", "fig1"});
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("[nodes]"), std::string::npos);
}

}  // namespace
}  // namespace ciaodv
