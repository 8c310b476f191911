#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <vector>

namespace gepi {

using Rational = boost::multiprecision::cpp_rational;

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// Exactness keeps Sturm sign patterns free of rounding.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<long long> coeffs);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& coeff(int i) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Polynomial derivative() const;
  Rational eval(const Rational& x) const;
  double eval_double(double x) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& s) const;

  /// Remainder of this modulo divisor (exact Euclidean division).
  Polynomial remainder(const Polynomial& divisor) const;

  bool operator==(const Polynomial& other) const { return coeffs_ == other.coeffs_; }

 private:
  std::vector<Rational> coeffs_;  // empty means the zero polynomial
};

/// Textbook Sturm chain: g0 = poly, g1 = g0', g_{i+1} = -(g_{i-1} mod g_i),
/// ending at the last nonzero remainder.
std::vector<Polynomial> sturm_sequence(const Polynomial& poly);

/// Signs (-1, 0, +1) of the chain evaluated at a point.
std::vector<int> sign_pattern(const std::vector<Polynomial>& chain, const Rational& at);

int sign_changes(const std::vector<Polynomial>& chain, const Rational& at);

struct RootCount {
  int count = 0;
  Rational a, b;           // endpoints actually used
  bool endpoints_shifted;  // an endpoint was a root and was nudged
};

/// Number of distinct real roots in (a, b] by Sturm's theorem. Endpoints that
/// are roots are shifted outward by an exact rational nudge and the shift is
/// reported.
RootCount count_real_roots(const Polynomial& poly, Rational a, Rational b);

}  // namespace gepi
