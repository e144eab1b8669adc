#pragma once

#include <cstdint>

namespace ciaodv {

/// 32-bit destination/originator sequence number with wraparound ordering.
struct SeqNo {
  std::uint32_t value = 0;

  bool operator==(const SeqNo&) const = default;
  SeqNo next() const { return SeqNo{value + 1}; }
};

/// True iff `a` is strictly fresher than `b`. Uses the signed difference of
/// the unsigned counters, so the order is total on any window < 2^31.
bool seqno_newer(SeqNo a, SeqNo b);

}  // namespace ciaodv
