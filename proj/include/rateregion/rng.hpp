#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rateregion {

// Counter-based pseudo-random generator. Output word i of stream
// (seed, stream) is a pure function of (seed, stream, i), so any draw can be
// regenerated on any thread, in any order, with bit-identical results.
//
// The word function is the SplitMix64 finalizer; uniform doubles take the top
// 53 bits, and normals use Box-Muller consuming exactly two words per call so
// the stream layout never depends on rejection luck.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(mix(mix(seed) + stream)) {}

  std::uint64_t next_u64() { return mix(base_ + counter_++); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal. The first word is mapped to (0, 1] so the log argument
  // is never zero.
  double normal() {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace rateregion
