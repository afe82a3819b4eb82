#pragma once

// Deterministic, platform-stable random numbers for the numerical labs.
// std::mt19937_64 would be reproducible too, but the standard distributions
// are not specified bit-for-bit across library implementations; campaigns
// promise byte-identical output for a given seed, so we keep the whole chain
// under our control.

#include <cstdint>

namespace sumlab {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1), 53 usable bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in (0,1]; campaigns avoid exact zeros (0^negative in the hand
  // formulas they are checked against).
  double uniform_pos() { return 1.0 - uniform01(); }

  // Uniform integer in [lo, hi] (small ranges only; modulo bias is irrelevant
  // at the range sizes used here but we reject to keep draws exact).
  int uniform_int(int lo, int hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = ~0ULL - (~0ULL % span);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<int>(x % span);
  }
};

// Per-trial sub-seed: mixes the master seed with the trial index through one
// SplitMix64 round so trials are independent of execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master ^ (0xA0761D6478BD642FULL * (index + 1)));
  return g.next();
}

}  // namespace sumlab
