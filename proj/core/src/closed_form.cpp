#include "gepi/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gepi/entropy.hpp"
#include "gepi/error.hpp"

namespace gepi {

namespace {

constexpr double kDomainSlack = 1e-12;

double clamp_box(double t) { return std::clamp(t, 0.0, kLn2); }

int checked_exponent(int order, const char* what) {
  if (order < 2 || (order & (order - 1)) != 0) {
    throw DomainError(std::string(what) + ": order must be a power of two >= 2");
  }
  int n = 0;
  while ((1 << n) < order) ++n;
  return n;
}

double check_range(double t, double top, const char* what) {
  if (!(t >= -kDomainSlack && t <= top + kDomainSlack)) {
    throw DomainError(std::string(what) + ": entropy outside [0, n ln 2]");
  }
  return std::clamp(t, 0.0, top);
}

// Golden-section minimization of a unimodal-ish 1-d slice; used only to
// polish the grid incumbent, so a fixed iteration count is enough.
template <typename F>
double golden_section(F f, double lo, double hi, double* arg) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 60 && b - a > 1e-12; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  *arg = 0.5 * (a + b);
  return f(*arg);
}

}  // namespace

int entropy_box(double t, int n) {
  const int k = static_cast<int>(std::ceil(t / kLn2)) - 1;
  return std::clamp(k, 0, n - 1);
}

double f_2n(int n, double x, double y) {
  if (n < 1) throw DomainError("f_2n: n must be >= 1");
  const double top = n * kLn2;
  x = check_range(x, top, "f_2n");
  y = check_range(y, top, "f_2n");
  const int kx = entropy_box(x, n);
  const int ky = entropy_box(y, n);
  if (kx != ky) return std::max(x, y);
  return kx * kLn2 + f2(clamp_box(x - kx * kLn2), clamp_box(y - kx * kLn2));
}

double f_group(const FiniteAbelianGroup& group, double x, double y) {
  if (!group.is_two_group()) {
    throw UnsupportedGroupError("f_group: no closed form for non 2-groups");
  }
  return f_2n(group.exponent(), x, y);
}

double f_gk(int n, std::span<const double> xs) {
  if (xs.empty()) throw DomainError("f_gk: empty entropy list");
  const double top = n * kLn2;
  std::vector<double> sorted(xs.begin(), xs.end());
  for (double& t : sorted) t = check_range(t, top, "f_gk");
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double acc = sorted.back();
  for (int i = static_cast<int>(sorted.size()) - 2; i >= 0; --i) {
    acc = f_2n(n, sorted[static_cast<std::size_t>(i)], acc);
  }
  return acc;
}

double direct_sum_lower_bound(int order_h, int order_g, double x, double y,
                              int grid_resolution) {
  const int l2 = checked_exponent(order_h, "direct_sum_lower_bound");
  const int l1 = checked_exponent(order_g, "direct_sum_lower_bound");
  if (grid_resolution < 1) throw DomainError("direct_sum_lower_bound: resolution < 1");
  const double top = (l1 + l2) * kLn2;
  x = check_range(x, top, "direct_sum_lower_bound");
  y = check_range(y, top, "direct_sum_lower_bound");

  const double umin = std::max(0.0, x - l1 * kLn2);
  const double umax = std::min(l2 * kLn2, x);
  const double vmin = std::max(0.0, y - l1 * kLn2);
  const double vmax = std::min(l2 * kLn2, y);
  if (umin > umax + kDomainSlack || vmin > vmax + kDomainSlack) {
    throw DomainError("direct_sum_lower_bound: infeasible constraint rectangle");
  }

  const auto objective = [&](double u, double v) {
    u = std::clamp(u, umin, umax);
    v = std::clamp(v, vmin, vmax);
    return f_2n(l2, u, v) + f_2n(l1, x - u, y - v);
  };

  const int m = grid_resolution;
  double best = objective(umin, vmin);
  double bu = umin, bv = vmin;
  for (int i = 0; i <= m; ++i) {
    const double u = umin + (umax - umin) * i / m;
    for (int j = 0; j <= m; ++j) {
      const double v = vmin + (vmax - vmin) * j / m;
      const double val = objective(u, v);
      if (val < best) {
        best = val;
        bu = u;
        bv = v;
      }
    }
  }

  // Local refinement, one grid cell around the incumbent in each coordinate.
  const double du = (umax - umin) / m;
  const double dv = (vmax - vmin) / m;
  for (int sweep = 0; sweep < 3; ++sweep) {
    if (du > 0.0) {
      double arg = bu;
      const double val = golden_section(
          [&](double u) { return objective(u, bv); },
          std::max(umin, bu - du), std::min(umax, bu + du), &arg);
      if (val < best) {
        best = val;
        bu = arg;
      }
    }
    if (dv > 0.0) {
      double arg = bv;
      const double val = golden_section(
          [&](double v) { return objective(bu, v); },
          std::max(vmin, bv - dv), std::min(vmax, bv + dv), &arg);
      if (val < best) {
        best = val;
        bv = arg;
      }
    }
  }
  return best;
}

}  // namespace gepi
