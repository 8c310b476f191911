#include "gepi/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gepi/entropy.hpp"
#include "gepi/error.hpp"

namespace gepi {

namespace {

constexpr double kQZeroTol = 1e-14;

double log_ratio(double p) { return std::log((1.0 - p) / p); }

double fn_m(double p) { return p * (1.0 - p) * log_ratio(p) / (1.0 - 2.0 * p); }

double fn_n(double p) {
  const double r = log_ratio(p);
  return p * (1.0 - p) * (1.0 - 2.0 * p) * r * r / binary_entropy(p);
}

double fn_l(double q) {
  if (q < kQZeroTol) return 0.0;
  return binary_entropy(q) / log_ratio(q);
}

double fn_lprime(double q) {
  if (q < kQZeroTol) return 1.0;
  const double r = log_ratio(q);
  return 1.0 + binary_entropy(q) / (q * (1.0 - q)) / (r * r);
}

// M'(p) = (2p^2 - 2p + 1) R / (1-2p)^2 - 1/(1-2p), R = ln((1-p)/p).
double fn_mprime(double p) {
  const double r = log_ratio(p);
  const double d = 1.0 - 2.0 * p;
  return (2.0 * p * p - 2.0 * p + 1.0) * r / (d * d) - 1.0 / d;
}

// N = W R^2 / h with W = p(1-p)(1-2p); W' = 1 - 6p + 6p^2 and
// (R^2)' = -2R/(p(1-p)), so N' = (W' R^2 - 2R(1-2p))/h - W R^3 / h^2.
double fn_nprime(double p) {
  const double r = log_ratio(p);
  const double w = p * (1.0 - p) * (1.0 - 2.0 * p);
  const double wp = 1.0 - 6.0 * p + 6.0 * p * p;
  const double h = binary_entropy(p);
  return (wp * r * r - 2.0 * r * (1.0 - 2.0 * p)) / h - w * r * r * r / (h * h);
}

double derived_q(double p, double k) { return (k - p) / (1.0 - 2.0 * p); }

double fn_a(double p, double k) {
  return fn_m(p) + fn_n(p) * fn_l(derived_q(p, k)) / (1.0 - 2.0 * k);
}

double fn_b(double p, double k) {
  const double q = derived_q(p, k);
  const double d = 1.0 - 2.0 * p;
  return fn_mprime(p) + fn_nprime(p) * fn_l(q) / (1.0 - 2.0 * k) -
         fn_n(p) * fn_lprime(q) / (d * d);
}

double fn_f(double p) {
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  return p * p * lp * lp - (1.0 - p) * (1.0 - p) * lq * lq +
         (1.0 - 2.0 * p) * (lp * lq + p * lp + (1.0 - p) * lq);
}

double fn_f1(double p) {
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double u = 1.0 - p;
  return (2.0 * u * u * p * lq * lq - p * p * lp * (1.0 - 2.0 * p - 2.0 * u * lp) +
          u * lq * (1.0 - 3.0 * p + 2.0 * p * p - 2.0 * p * lp)) /
         (u * p);
}

double fn_f2(double p) {
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double u = 1.0 - p;
  return ((-1.0 + p * p + 2.0 * p * p * p - 2.0 * p * p * p * p) * lq -
          2.0 * u * u * p * p * lq * lq +
          p * (-1.0 + 3.0 * p - 2.0 * p * p +
               p * (5.0 - 6.0 * p + 2.0 * p * p) * lp + 2.0 * u * u * p * lp * lp)) /
         (u * u * p * p);
}

double fn_f3(double p) {
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double u = 1.0 - p;
  return 2.0 *
         (u * u * (1.0 - p * p + 2.0 * p * p * p) * lq +
          p * (1.0 + p - 4.0 * p * p + 2.0 * p * p * p +
               p * (2.0 - 4.0 * p + 5.0 * p * p - 2.0 * p * p * p) * lp)) /
         (u * u * u * p * p * p);
}

double fn_f5(double p) {
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double u = 1.0 - p;
  const double u5 = u * u * u * u * u;
  const double p5 = p * p * p * p * p;
  return 2.0 / (u5 * p5) *
         (p1_full().eval_double(p) * lp + p2_full().eval_double(p) * lq +
          p3_full().eval_double(p));
}

bool boundary_extends(AppendixFunctionId id) {
  switch (id) {
    case AppendixFunctionId::F:
    case AppendixFunctionId::F1:
    case AppendixFunctionId::F2:
    case AppendixFunctionId::F3:
    case AppendixFunctionId::F5:
    case AppendixFunctionId::P1:
    case AppendixFunctionId::P2:
    case AppendixFunctionId::P3:
      return true;
    default:
      return false;
  }
}

}  // namespace

double eval_appendix(AppendixFunctionId id, double p, std::optional<double> k) {
  const double hi = boundary_extends(id) ? 0.5 : 0.5 - 1e-15;
  if (!(p > 0.0 && p <= hi)) {
    throw DomainError("eval_appendix: p outside the open interval (0, 1/2)");
  }
  const bool needs_k = id == AppendixFunctionId::A || id == AppendixFunctionId::B;
  if (needs_k) {
    if (!k.has_value()) throw DomainError("eval_appendix: A and B require k");
    if (!(*k >= p && *k < 0.5)) {
      throw DomainError("eval_appendix: k must lie in [p, 1/2)");
    }
  }
  switch (id) {
    case AppendixFunctionId::M:
      return fn_m(p);
    case AppendixFunctionId::N:
      return fn_n(p);
    case AppendixFunctionId::L:
      return fn_l(p);
    case AppendixFunctionId::Lprime:
      return fn_lprime(p);
    case AppendixFunctionId::A:
      return fn_a(p, *k);
    case AppendixFunctionId::B:
      return fn_b(p, *k);
    case AppendixFunctionId::F:
      return fn_f(p);
    case AppendixFunctionId::F1:
      return fn_f1(p);
    case AppendixFunctionId::F2:
      return fn_f2(p);
    case AppendixFunctionId::F3:
      return fn_f3(p);
    case AppendixFunctionId::F5:
      return fn_f5(p);
    case AppendixFunctionId::P1:
      return p1_full().eval_double(p);
    case AppendixFunctionId::P2:
      return p2_full().eval_double(p);
    case AppendixFunctionId::P3:
      return p3_full().eval_double(p);
  }
  throw DomainError("eval_appendix: unknown function id");
}

const Polynomial& p1_hat() {
  static const Polynomial poly{2, -10, 20, -11, 7, -2};
  return poly;
}

const Polynomial& p2_hat() {
  static const Polynomial poly{6, -15, 9, 3, -3, 2};
  return poly;
}

const Polynomial& p1_full() {
  static const Polynomial poly = Polynomial{0, 0, 2} * p1_hat();
  return poly;
}

const Polynomial& p2_full() {
  static const Polynomial poly = Polynomial{2, -4, 2} * p2_hat();
  return poly;
}

const Polynomial& p3_full() {
  static const Polynomial poly = Polynomial{0, 1} * Polynomial{12, -49, 70, -25, -12, 4};
  return poly;
}

ClaimId claim_from_string(const std::string& name) {
  if (name == "np") return ClaimId::np;
  if (name == "lp") return ClaimId::lp;
  if (name == "Fp" || name == "fp") return ClaimId::Fp;
  if (name == "p1p2") return ClaimId::p1p2;
  if (name == "dfdx_ray" || name == "dfdx-ray") return ClaimId::dfdx_ray;
  if (name == "poly_bound_identity" || name == "poly-bound-identity") {
    return ClaimId::poly_bound_identity;
  }
  throw DomainError("unknown claim id: " + name);
}

std::string claim_name(ClaimId id) {
  switch (id) {
    case ClaimId::np:
      return "np";
    case ClaimId::lp:
      return "lp";
    case ClaimId::Fp:
      return "Fp";
    case ClaimId::p1p2:
      return "p1p2";
    case ClaimId::dfdx_ray:
      return "dfdx_ray";
    case ClaimId::poly_bound_identity:
      return "poly_bound_identity";
  }
  return "?";
}

namespace {

std::vector<double> interior_grid(int grid_size) {
  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    grid[static_cast<std::size_t>(i)] = 0.5 * (i + 1) / (grid_size + 1);
  }
  return grid;
}

std::string pattern_string(const std::vector<int>& signs) {
  std::string s = "(";
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (i > 0) s += ",";
    s += signs[i] > 0 ? "+" : (signs[i] < 0 ? "-" : "0");
  }
  return s + ")";
}

ClaimReport check_monotone(ClaimId id, const char* what, int grid_size,
                           AppendixFunctionId fn, bool decreasing) {
  const auto grid = interior_grid(grid_size);
  double worst = -1e300;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double delta = eval_appendix(fn, grid[i + 1]) - eval_appendix(fn, grid[i]);
    worst = std::max(worst, decreasing ? delta : -delta);
  }
  ClaimReport report;
  report.claim = claim_name(id);
  report.max_violation = worst;
  report.pass = worst < 0.0;
  report.details = std::string(what) + (report.pass ? " holds" : " violated") +
                   " on a " + std::to_string(grid_size) + "-point grid";
  return report;
}

}  // namespace

ClaimReport verify_claim(ClaimId id, int grid_size) {
  if (grid_size < 100) throw DomainError("verify_claim: grid_size must be >= 100");
  switch (id) {
    case ClaimId::np:
      return check_monotone(id, "N strictly decreasing", grid_size,
                            AppendixFunctionId::N, /*decreasing=*/true);
    case ClaimId::lp: {
      ClaimReport report = check_monotone(id, "L strictly increasing", grid_size,
                                          AppendixFunctionId::L, /*decreasing=*/false);
      double lp_floor = 1e300;
      for (double p : interior_grid(grid_size)) {
        lp_floor = std::min(lp_floor, eval_appendix(AppendixFunctionId::Lprime, p));
      }
      report.max_violation = std::max(report.max_violation, 1.0 - lp_floor);
      report.pass = report.pass && lp_floor >= 1.0 - 1e-12;
      report.details += "; min L' = " + std::to_string(lp_floor);
      return report;
    }
    case ClaimId::Fp: {
      double worst = -1e300;
      for (double p : interior_grid(grid_size)) {
        worst = std::max(worst, eval_appendix(AppendixFunctionId::F, p));
      }
      ClaimReport report;
      report.claim = claim_name(id);
      report.max_violation = worst;
      report.pass = worst <= 1e-12;
      report.details = "max F over the grid";
      return report;
    }
    case ClaimId::p1p2: {
      const auto count1 = count_real_roots(p1_hat(), Rational(0), Rational(1, 2));
      const auto count2 = count_real_roots(p2_hat(), Rational(0), Rational(1, 2));
      const auto chain1 = sturm_sequence(p1_hat());
      const auto chain2 = sturm_sequence(p2_hat());
      double grid_min = 1e300;
      for (double p : interior_grid(grid_size)) {
        grid_min = std::min({grid_min, eval_appendix(AppendixFunctionId::P1, p),
                             eval_appendix(AppendixFunctionId::P2, p)});
      }
      ClaimReport report;
      report.claim = claim_name(id);
      report.pass = count1.count == 0 && count2.count == 0 && grid_min >= 0.0;
      report.max_violation = report.pass ? -grid_min : 1.0;
      std::ostringstream details;
      details << "roots in [0,1/2]: P1hat " << count1.count << ", P2hat " << count2.count
              << "; P1hat signs at 0 " << pattern_string(sign_pattern(chain1, Rational(0)))
              << ", at 1/2 " << pattern_string(sign_pattern(chain1, Rational(1, 2)))
              << "; P2hat signs at 0 " << pattern_string(sign_pattern(chain2, Rational(0)))
              << ", at 1/2 " << pattern_string(sign_pattern(chain2, Rational(1, 2)))
              << "; exact arithmetic confirms the last P2hat chain entry is positive";
      report.details = details.str();
      return report;
    }
    case ClaimId::dfdx_ray: {
      // Slopes spread on both sides of 1; t keeps (t, theta t) strictly inside
      // the square.
      const double thetas[] = {0.2, 0.5, 0.8, 1.0, 1.25, 2.0, 5.0};
      double worst = -1e300;
      for (double theta : thetas) {
        const double t_top = std::min(kLn2, kLn2 / theta) * 0.999;
        double prev = 0.0;
        bool have_prev = false;
        for (int i = 1; i <= grid_size; ++i) {
          const double t = t_top * i / (grid_size + 1);
          const double d = df2_dx(t, theta * t);
          if (have_prev) worst = std::max(worst, d - prev);
          prev = d;
          have_prev = true;
        }
      }
      ClaimReport report;
      report.claim = claim_name(id);
      report.max_violation = worst;
      report.pass = worst < 0.0;
      report.details = "df2/dx along rays through the origin";
      return report;
    }
    case ClaimId::poly_bound_identity: {
      // P1 (-(1-p) - (1-p)^2/2) + P2 (-p - p^2/2) + P3, exactly.
      const Polynomial one_minus{1, -1};
      const Polynomial bound_log_p =
          -one_minus - (one_minus * one_minus).scaled(Rational(1, 2));
      const Polynomial p_poly{0, 1};
      const Polynomial bound_log_1mp =
          -p_poly - (p_poly * p_poly).scaled(Rational(1, 2));
      const Polynomial lhs =
          p1_full() * bound_log_p + p2_full() * bound_log_1mp + p3_full();
      const Polynomial half_shift{-1, 2};  // 2p - 1 = 2(p - 1/2)
      const Polynomial rhs = (one_minus * one_minus * (half_shift * half_shift))
                                 .scaled(Rational(-3)) *
                             (Polynomial{0, 0, 1} *
                              Polynomial({Rational(7, 3), Rational(-1), Rational(1)}));
      ClaimReport report;
      report.claim = claim_name(id);
      report.pass = lhs == rhs;
      report.max_violation = report.pass ? 0.0 : 1.0;
      report.details = report.pass
                           ? "exact coefficientwise match with -12(1-p)^2(p-1/2)^2 p^2 "
                             "(p^2 - p + 7/3)"
                           : "coefficient mismatch";
      return report;
    }
  }
  throw DomainError("verify_claim: unknown claim");
}

}  // namespace gepi
