#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ciaodv/messages.hpp"
#include "ciaodv/node.hpp"
#include "ciaodv/trace.hpp"

namespace ciaodv {

struct FlowMetrics {
  std::uint32_t flow = 0;
  std::string src;
  std::string dst;
  std::uint64_t offered = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t in_flight = 0;
  double pdr = 0.0;
  double mean_latency_ms = 0.0;
  std::optional<double> discovery_latency_ms;
  bool established = false;
  std::uint32_t rejections = 0;
  std::optional<FailureReason> failure_reason;

  bool operator==(const FlowMetrics&) const = default;
};

struct GlobalMetrics {
  std::array<std::uint64_t, kMessageKindCount> control_by_kind{};
  std::uint64_t control_total = 0;
  double control_overhead_ratio = 0.0;  // control transmissions per delivered data packet
  std::uint64_t offered = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t in_flight = 0;
  std::uint64_t admissions = 0;
  std::uint64_t rejections = 0;
  std::uint64_t teardowns = 0;
  std::uint64_t route_breaks = 0;
  std::uint64_t rediscoveries = 0;
  std::int64_t live_routes = 0;
  std::uint32_t established_flows = 0;

  bool operator==(const GlobalMetrics&) const = default;
};

struct MetricsReport {
  std::uint64_t scenario_hash = 0;
  std::uint64_t seed = 0;
  std::vector<FlowMetrics> flows;
  GlobalMetrics global;

  bool operator==(const MetricsReport&) const = default;
};

/// Pure fold over the trace. Throws MalformedTrace on inconsistent events.
/// The protocol is deliberately not part of the report, so runs that behave
/// identically produce identical reports.
MetricsReport compute_report(const SimTrace& trace);

inline constexpr std::string_view kMetricsMagic = "# ciaodv-metrics v1";

/// Column names of the CSV body, in order.
const std::vector<std::string>& csv_columns();
/// The flow rows and the GLOBAL row, without the header line.
std::vector<std::vector<std::string>> csv_rows(const MetricsReport& report);
std::string report_csv(const MetricsReport& report);
std::string report_lines(const MetricsReport& report);

class ScenarioMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ComparisonRow {
  std::string metric;
  double a = 0.0;
  double b = 0.0;
  double delta = 0.0;  // b - a

  bool operator==(const ComparisonRow&) const = default;
};

struct ComparisonTable {
  std::uint64_t scenario_hash = 0;
  std::string a_label = "a";
  std::string b_label = "b";
  std::vector<ComparisonRow> rows;

  bool operator==(const ComparisonTable&) const = default;
};

/// Throws ScenarioMismatch unless both reports come from the same scenario.
ComparisonTable compare(const MetricsReport& a, const MetricsReport& b, std::string a_label = "a",
                        std::string b_label = "b");
std::string comparison_csv(const ComparisonTable& table);
std::string comparison_lines(const ComparisonTable& table);

}  // namespace ciaodv
