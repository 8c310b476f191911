#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace gepi {

/// SplitMix64. Hand-rolled so that seeded runs are reproducible bit-for-bit
/// independent of the standard library implementation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Stream derived from (seed, index); used for per-restart and per-instance
  /// generators.
  static SplitMix64 derived(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 base(seed);
    const std::uint64_t a = base.next();
    return SplitMix64(a ^ (index * 0x9e3779b97f4a7c15ULL) ^ base.next());
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in (0, 1).
  double uniform01() {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  /// Uniform integer in [0, m).
  int uniform_int(int m) { return static_cast<int>(next() % static_cast<std::uint64_t>(m)); }

  /// Symmetric Dirichlet(1) draw: i.i.d. Exp(1) normalized.
  std::vector<double> dirichlet(int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& x : v) {
      x = -std::log(uniform01());
      sum += x;
    }
    for (double& x : v) x /= sum;
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace gepi
