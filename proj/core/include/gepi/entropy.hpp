#pragma once

namespace gepi {

inline constexpr double kLn2 = 0.69314718055994530942;

/// Binary entropy h(p) = -p ln p - (1-p) ln(1-p) in nats, with 0 ln 0 := 0.
/// Inputs within 1e-15 of 0 or 1 are clamped to the endpoint.
double binary_entropy(double p);

/// Unique p in [0, 1/2] with binary_entropy(p) = x, by bisection to an
/// absolute tolerance of 1e-14 in p. Accepts x in [0, ln 2] (a small
/// overshoot above ln 2 is clamped to 1/2).
double inverse_binary_entropy(double x);

/// Binary convolution parameter p*q = p(1-q) + q(1-p) on the canonical
/// half-interval [0, 1/2].
double star(double p, double q);

/// f2(x, y) = h(h^{-1}(x) * h^{-1}(y)) on [0, ln 2]^2.
double f2(double x, double y);

/// Partial derivative of f2 with respect to x,
///   (1-2q) ln((1-p*q)/(p*q)) / ln((1-p)/p),  p = h^{-1}(x), q = h^{-1}(y).
/// Within 1e-12 of the boundary the analytic limits are returned instead of
/// the singular quotient: 1 at y = 0, (1-2q)^2 as x -> ln 2, 0 as x -> 0
/// with y > 0.
double df2_dx(double x, double y);

}  // namespace gepi
