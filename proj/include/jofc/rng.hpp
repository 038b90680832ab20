#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace jofc {

/// Seedable random source used by every stochastic piece of the project
/// (generators, k-means seeding, out-of-sample starts).
///
/// The raw stream is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard, and uniform/normal variates are derived here by explicit
/// arithmetic (53-bit uniforms, Box-Muller normals) instead of the
/// implementation-defined <random> distributions. Identical seeds therefore
/// reproduce identical experiments across compilers and platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; draws two uniforms per pair of variates.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Uniform index in [0, bound); bound must be positive.
  std::size_t below(std::size_t bound) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(bound)) % bound;
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace jofc
