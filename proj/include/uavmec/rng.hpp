#pragma once

#include <cstdint>
#include <random>

namespace uavmec {

// Deterministic random source. Draws are built from raw 64-bit engine output
// with fixed arithmetic, so streams reproduce bit-for-bit across platforms
// (std::uniform_real_distribution makes no such promise).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform_real(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // [0, n); requires n >= 1. Modulo bias is negligible for n far below 2^64.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(eng_() % static_cast<std::uint64_t>(n));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace uavmec
