#ifndef VROPT_RNG_HPP
#define VROPT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace vropt {

/// Seedable PRNG with fixed, platform-independent output streams.
///
/// The engine is std::mt19937_64 (fully specified by the standard); the
/// derived draws below avoid std::*_distribution, whose sequences are
/// implementation-defined.
class rng {
 public:
  explicit rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). Rejection-free multiply-shift reduction.
  std::int64_t uniform_index(std::int64_t n) {
    return static_cast<std::int64_t>(
        (static_cast<unsigned __int128>(engine_()) *
         static_cast<unsigned __int128>(n)) >>
        64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (one value per pair of uniforms).
  double normal() {
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vropt

#endif
