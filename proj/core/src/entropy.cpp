#include "gepi/entropy.hpp"

#include <cmath>

#include "gepi/error.hpp"

namespace gepi {

namespace {

constexpr double kClamp = 1e-15;
constexpr double kBoundaryEps = 1e-12;
constexpr double kInvTol = 1e-14;

}  // namespace

double binary_entropy(double p) {
  if (!(p >= -kClamp && p <= 1.0 + kClamp)) {
    throw DomainError("binary_entropy: p outside [0, 1]");
  }
  if (p < kClamp || p > 1.0 - kClamp) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

double inverse_binary_entropy(double x) {
  if (!(x >= 0.0 && x <= kLn2 + kInvTol)) {
    throw DomainError("inverse_binary_entropy: x outside [0, ln 2]");
  }
  if (x <= 0.0) return 0.0;
  if (x >= kLn2) return 0.5;
  double lo = 0.0, hi = 0.5;
  // h is strictly increasing on [0, 1/2]; 55 halvings of 1/2 land well
  // below the 1e-14 target.
  for (int i = 0; i < 55 && hi - lo > kInvTol * 0.5; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double star(double p, double q) {
  if (!(p >= 0.0 && p <= 0.5 && q >= 0.0 && q <= 0.5)) {
    throw DomainError("star: arguments outside [0, 1/2]");
  }
  return p * (1.0 - q) + q * (1.0 - p);
}

double f2(double x, double y) {
  if (!(x >= 0.0 && x <= kLn2 + kInvTol && y >= 0.0 && y <= kLn2 + kInvTol)) {
    throw DomainError("f2: arguments outside [0, ln 2]^2");
  }
  return binary_entropy(star(inverse_binary_entropy(x), inverse_binary_entropy(y)));
}

double df2_dx(double x, double y) {
  if (!(x >= 0.0 && x <= kLn2 && y >= 0.0 && y <= kLn2)) {
    throw DomainError("df2_dx: arguments outside [0, ln 2]^2");
  }
  const double q = inverse_binary_entropy(y);
  if (y < kBoundaryEps) return 1.0;
  if (x > kLn2 - kBoundaryEps) {
    const double t = 1.0 - 2.0 * q;
    return t * t;
  }
  if (x < kBoundaryEps) return 0.0;
  const double p = inverse_binary_entropy(x);
  const double pq = star(p, q);
  return (1.0 - 2.0 * q) * std::log((1.0 - pq) / pq) / std::log((1.0 - p) / p);
}

}  // namespace gepi
