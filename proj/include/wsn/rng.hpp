#pragma once

#include <cstdint>
#include <random>

namespace wsn {

// Deterministic per-trial random stream. Every draw a trial makes goes
// through this wrapper so the consumption order is well defined:
// deployment first (node positions, then gateway picks), then one uniform
// per alive node per round in ascending id order. The mapping from engine
// words to doubles is fixed here, not delegated to <random> distributions,
// so equal seeds give equal streams on any conforming implementation.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), unbiased by rejection. bound >= 1.
  std::uint64_t uniform_index(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wsn
