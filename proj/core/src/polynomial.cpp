#include "gepi/polynomial.hpp"

#include <algorithm>

#include "gepi/error.hpp"

namespace gepi {

namespace {

void trim(std::vector<Rational>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

int sign_of(const Rational& v) {
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

int changes(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim(coeffs_);
}

Polynomial::Polynomial(std::initializer_list<long long> coeffs) {
  coeffs_.assign(coeffs.begin(), coeffs.end());
  trim(coeffs_);
}

const Rational& Polynomial::coeff(int i) const {
  static const Rational kZero = 0;
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<std::size_t>(i)];
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    out[i - 1] = coeffs_[i] * static_cast<int>(i);
  }
  return Polynomial(std::move(out));
}

Rational Polynomial::eval(const Rational& x) const {
  Rational v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

double Polynomial::eval_double(double x) const {
  double v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    v = v * x + static_cast<double>(*it);
  }
  return v;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Rational> out(std::max(coeffs_.size(), other.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] += other.coeffs_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + (-other);
}

Polynomial Polynomial::operator-() const {
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c = -c;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(const Rational& s) const {
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c *= s;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::remainder(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial remainder: division by zero");
  std::vector<Rational> rem = coeffs_;
  trim(rem);
  const auto& d = divisor.coeffs_;
  while (rem.size() >= d.size() && !rem.empty()) {
    const Rational q = rem.back() / d.back();
    const std::size_t shift = rem.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i) rem[shift + i] -= q * d[i];
    rem.pop_back();
    trim(rem);
  }
  return Polynomial(std::move(rem));
}

std::vector<Polynomial> sturm_sequence(const Polynomial& poly) {
  if (poly.is_zero()) throw DomainError("sturm_sequence: zero polynomial");
  std::vector<Polynomial> chain{poly, poly.derivative()};
  if (chain.back().is_zero()) {
    chain.pop_back();  // constant input
    return chain;
  }
  while (true) {
    const Polynomial r = chain[chain.size() - 2].remainder(chain.back());
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

std::vector<int> sign_pattern(const std::vector<Polynomial>& chain, const Rational& at) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& g : chain) signs.push_back(sign_of(g.eval(at)));
  return signs;
}

int sign_changes(const std::vector<Polynomial>& chain, const Rational& at) {
  return changes(sign_pattern(chain, at));
}

RootCount count_real_roots(const Polynomial& poly, Rational a, Rational b) {
  if (poly.is_zero()) throw DomainError("count_real_roots: zero polynomial");
  if (!(a < b)) throw DomainError("count_real_roots: need a < b");

  RootCount result;
  // Nudge a root endpoint outward by an exact fraction of the interval until
  // it clears every root (a degree-d polynomial has at most d of them).
  Rational eps = (b - a) / 1000000;
  for (int tries = 0; poly.eval(a) == 0 && tries <= poly.degree() + 1; ++tries) {
    a -= eps;
    result.endpoints_shifted = true;
  }
  for (int tries = 0; poly.eval(b) == 0 && tries <= poly.degree() + 1; ++tries) {
    b += eps;
    result.endpoints_shifted = true;
  }

  const auto chain = sturm_sequence(poly);
  result.count = sign_changes(chain, a) - sign_changes(chain, b);
  result.a = a;
  result.b = b;
  return result;
}

}  // namespace gepi
