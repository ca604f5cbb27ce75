#pragma once

// Counter-style splittable generator (splitmix64).  Monte Carlo trial i uses
// the stream derived from (base_seed, i), so results are reproducible
// bit-for-bit no matter how trials are chunked or reordered.

#include <cstdint>

namespace cavsim {

class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed) {}

  // Independent stream for one trial of a run seeded with base_seed.
  static SplitRng for_trial(std::uint64_t base_seed, std::uint64_t trial) {
    return SplitRng(mix(base_seed + 0x9E3779B97F4A7C15ull * (trial + 1)));
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    return mix_rounds(z);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix_rounds(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  static std::uint64_t mix(std::uint64_t z) {
    return mix_rounds(z + 0x9E3779B97F4A7C15ull);
  }

  std::uint64_t state_;
};

}  // namespace cavsim
