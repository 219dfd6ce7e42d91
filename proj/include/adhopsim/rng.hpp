#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace adhopsim {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic RNG wrapper. The distribution transforms are hand-rolled so
// that runs reproduce bit-identically across standard library versions;
// std::*_distribution output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // [0, 1)
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // [a, b)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // (0, hi]; used for speed resampling where zero is excluded
  double uniform_open_zero(double hi) { return hi * (1.0 - uniform()); }

  // [0, n)
  std::uint32_t uniform_u32(std::uint32_t n) {
    return n == 0 ? 0 : static_cast<std::uint32_t>(gen_() % n);
  }

  bool bernoulli(double p) { return p > 0.0 && uniform() < p; }

  // Box-Muller; always consumes two draws
  double normal(double mean, double stddev) {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    return mean + stddev * z;
  }

  double exponential(double mean) {
    double u = 1.0 - uniform();
    return -mean * std::log(u);
  }

 private:
  std::mt19937_64 gen_;
};

// Independent per-purpose stream derived from (seed, stream, index).
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t s = seed ^ (stream * 0x9e3779b97f4a7c15ULL) ^ (index * 0xd1b54a32d192ed03ULL);
  std::uint64_t mixed = splitmix64(s);
  s ^= mixed;
  return Rng(splitmix64(s));
}

}  // namespace adhopsim
