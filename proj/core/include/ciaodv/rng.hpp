#pragma once

#include <cstdint>
#include <random>

namespace ciaodv {

std::uint64_t splitmix64(std::uint64_t x);

/// Seeded generator. mt19937_64 underneath; the distributions are written out
/// here because the standard ones are not specified bit-for-bit across
/// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  /// Uniform on [0, 1), 53 bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  double exponential(double rate);
  /// Draws only when 0 < p < 1.
  bool bernoulli(double p);

 private:
  std::mt19937_64 gen_;
};

/// Independent substreams derived from the scenario seed.
enum class Stream : std::uint64_t { Loss = 1, Mobility = 2, Hello = 3, Traffic = 4, Generator = 5 };

Rng make_stream(std::uint64_t seed, Stream stream, std::uint64_t sub = 0);

}  // namespace ciaodv
