#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

// Deterministic random streams. The generator family is std::mt19937_64 with
// explicit 64-bit seeding; uniform doubles come from the top 53 bits and
// normals from Box-Muller, so the streams are bit-identical on every
// conforming platform (no std::*_distribution involved).

namespace wbell {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Fair coin as +1/-1.
  int sign() { return (engine_() >> 63) ? 1 : -1; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace wbell
