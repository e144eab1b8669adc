#include "ciaodv/rng.hpp"

#include <cmath>

namespace ciaodv {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = gen_();
  } while (v >= limit);
  return v % n;
}

double Rng::exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

bool Rng::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01() < p;
}

Rng make_stream(std::uint64_t seed, Stream stream, std::uint64_t sub) {
  std::uint64_t s = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)));
  return Rng(splitmix64(s ^ splitmix64(sub + 0x51ed2701ULL)));
}

}  // namespace ciaodv
