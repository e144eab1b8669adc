#pragma once

#include <cstdint>

namespace ciaodv {

/// Virtual simulation time in microseconds. Every interface that talks to
/// humans (scenario files, traces, reports) uses milliseconds with up to
/// three decimals, which maps onto this unit exactly.
using SimTime = std::int64_t;

inline constexpr SimTime kMicrosPerMilli = 1000;
inline constexpr SimTime kMicrosPerSecond = 1'000'000;

constexpr SimTime from_ms(std::int64_t ms) { return ms * kMicrosPerMilli; }
constexpr double to_ms(SimTime t) { return static_cast<double>(t) / kMicrosPerMilli; }

}  // namespace ciaodv
