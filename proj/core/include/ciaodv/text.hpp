#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ciaodv/time.hpp"

// Small text helpers shared by the line-oriented file formats.
namespace ciaodv::text {

std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> split_ws(std::string_view s);
std::string_view trim(std::string_view s);

std::optional<std::uint64_t> parse_uint(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);
std::optional<double> parse_double(std::string_view s);
std::optional<bool> parse_bool(std::string_view s);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);
/// Fixed-point rendering used by reports ("%.*f").
std::string format_fixed(double v, int decimals);

/// "1234" or "1234.5" style milliseconds; exact for microsecond times.
std::string format_ms(SimTime t);
/// Always three decimals, used in traces.
std::string format_ms_fixed(SimTime t);
/// Accepts up to three fractional digits; rejects anything finer.
std::optional<SimTime> parse_ms(std::string_view s);

std::string to_hex(std::uint64_t v);
std::optional<std::uint64_t> parse_hex(std::string_view s);

/// FNV-1a, used for scenario fingerprints.
std::uint64_t fnv1a(std::string_view data);

}  // namespace ciaodv::text
