#pragma once

#include <cstdint>

namespace fractmap {

using RandomSeed = std::uint64_t;

// SplitMix64 (Steele, Lea & Flood 2014). Chosen because its bit stream is
// fully specified by the algorithm: identical seeds reproduce identical
// outputs on every platform, which the deterministic-rendering and
// generator contracts require. Standard-library distributions are
// implementation-defined and are deliberately not used.
class SplitMix64 {
 public:
  explicit SplitMix64(RandomSeed seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool next_bool() { return (next() & 1ULL) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace fractmap
