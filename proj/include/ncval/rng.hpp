#pragma once

#include <cmath>
#include <cstdint>

namespace ncval {

// Counter-based deterministic random generator.  Every output is a pure
// function of (seed, stream, counter), so independent streams can be drawn
// concurrently and runs are reproducible bit-for-bit across platforms --
// unlike std:: distributions, whose algorithms are implementation-defined.
// The mixing function is the splitmix64 finalizer (Steele/Lea/Flood
// constants), which passes the usual statistical batteries at this scale.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + kGamma))) {}

  // 64 uniformly mixed bits for the given counter value.
  std::uint64_t bits(std::uint64_t counter) const {
    return mix(key_ + kGamma * (counter + 1));
  }

  // Uniform double in [0, 1) with 53-bit resolution.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // Standard normal deviate via Box-Muller on two decorrelated counters.
  double normal(std::uint64_t counter) const {
    const double u1 = static_cast<double>((bits(2 * counter) >> 11) + 1) *
                      0x1.0p-53;  // (0, 1]: keeps the log finite
    const double u2 = uniform(2 * counter + 1);
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  // Stateful convenience: consecutive draws from an internal counter.
  std::uint64_t next_bits() { return bits(cursor_++); }
  double next_uniform() { return uniform(cursor_++); }
  double next_normal() { return normal(cursor_++); }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t key_;
  std::uint64_t cursor_ = 0;
};

}  // namespace ncval
