#include "gepi/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gepi/closed_form.hpp"
#include "gepi/entropy.hpp"
#include "gepi/error.hpp"

namespace gepi {

namespace {

constexpr double kGaussTol = 1e-9;

double star_full(double a, double b) { return a * (1.0 - b) + b * (1.0 - a); }

double folded_coset_mass(const GroupDistribution& d) {
  const double m = gaussian_coset_mass(d);
  return std::min(m, 1.0 - m);
}

void require_gaussian(const GroupDistribution& d, const char* what) {
  if (d.group().cyclic_orders().size() != 1 || !d.group().is_two_group()) {
    throw PreconditionError(std::string(what) + ": distribution must live on Z_{2^n}");
  }
  if (!is_gaussian_2n(d, kGaussTol)) {
    throw PreconditionError(std::string(what) +
                            ": distribution is not constant on the cosets of Z_{2^{n-1}}");
  }
}

std::vector<double> sorted_grid(std::span<const double> alpha_grid) {
  if (alpha_grid.empty()) throw DomainError("rate region: empty alpha grid");
  std::vector<double> grid(alpha_grid.begin(), alpha_grid.end());
  for (double a : grid) {
    if (!(a >= 0.0 && a <= 1.0)) throw DomainError("rate region: alpha outside [0, 1]");
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

RateRegionPoint clamped_point(double alpha, double r1, double r2) {
  RateRegionPoint pt{alpha, r1, r2, false};
  if (pt.r1 < 0.0) {
    pt.r1 = 0.0;
    pt.clamped = true;
  }
  if (pt.r2 < 0.0) {
    pt.r2 = 0.0;
    pt.clamped = true;
  }
  return pt;
}

}  // namespace

ConditionalSource::ConditionalSource(std::vector<double> u_probs,
                                     std::vector<GroupDistribution> rows)
    : u_probs_(std::move(u_probs)), rows_(std::move(rows)) {
  if (rows_.empty() || u_probs_.size() != rows_.size()) {
    throw DomainError("conditional source: need one row per auxiliary symbol");
  }
  double mass = 0.0;
  for (double p : u_probs_) {
    if (p < 0.0) throw DomainError("conditional source: negative P(U=u)");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-12) {
    throw DomainError("conditional source: P(U) mass not 1");
  }
  for (const auto& row : rows_) {
    if (!(row.group() == rows_.front().group())) {
      throw PreconditionError("conditional source: rows on different groups");
    }
  }
}

double conditional_entropy(const ConditionalSource& src) {
  double h = 0.0;
  for (std::size_t u = 0; u < src.rows().size(); ++u) {
    h += src.u_probs()[u] * entropy(src.rows()[u]);
  }
  return h;
}

double scalar_mgl_check(const ConditionalSource& src, const GroupDistribution& noise,
                        const MinimizationConfig* numeric_fg) {
  if (!(src.group() == noise.group())) {
    throw PreconditionError("scalar_mgl_check: group mismatch");
  }
  double h_y_given_u = 0.0;
  for (std::size_t u = 0; u < src.rows().size(); ++u) {
    h_y_given_u += src.u_probs()[u] * entropy(convolve(src.rows()[u], noise));
  }
  const double h_x_given_u = conditional_entropy(src);
  const double h_z = entropy(noise);
  double fg;
  if (src.group().is_two_group()) {
    fg = f_group(src.group(), h_x_given_u, h_z);
  } else if (numeric_fg != nullptr) {
    fg = min_sum_entropy(src.group(), h_x_given_u, h_z, *numeric_fg).value;
  } else {
    throw UnsupportedGroupError(
        "scalar_mgl_check: no closed form for this group; pass a numeric config");
  }
  return h_y_given_u - fg;
}

double vector_mgl_check(const ConditionalSource& src_on_gk, int k,
                        const GroupDistribution& per_letter_noise) {
  if (k < 1) throw DomainError("vector_mgl_check: k must be >= 1");
  const auto& base = per_letter_noise.group();
  const FiniteAbelianGroup gk = base.power(k);
  if (!(src_on_gk.group() == gk)) {
    throw PreconditionError("vector_mgl_check: source does not live on G^k");
  }
  if (static_cast<long>(src_on_gk.u_size()) * gk.order() > 4096) {
    throw CapacityError("vector_mgl_check: |U| |G|^k exceeds 4096");
  }

  // i.i.d. per-letter noise on the product group; block i of the index is the
  // i-th letter.
  std::vector<double> noise_k(static_cast<std::size_t>(gk.order()), 1.0);
  const int m = base.order();
  for (int idx = 0; idx < gk.order(); ++idx) {
    int rest = idx;
    for (int letter = 0; letter < k; ++letter) {
      noise_k[static_cast<std::size_t>(idx)] *= per_letter_noise[rest % m];
      rest /= m;
    }
  }
  const GroupDistribution z_k(gk, std::move(noise_k));

  double h_yk_given_u = 0.0;
  for (std::size_t u = 0; u < src_on_gk.rows().size(); ++u) {
    h_yk_given_u += src_on_gk.u_probs()[u] * entropy(convolve(src_on_gk.rows()[u], z_k));
  }
  const double h_xk_given_u = conditional_entropy(src_on_gk);
  return h_yk_given_u / k -
         f_group(base, h_xk_given_u / k, entropy(per_letter_noise));
}

BroadcastSpec::BroadcastSpec(GroupDistribution p_z1, GroupDistribution p_z2_tilde)
    : p_z1_(std::move(p_z1)),
      p_z2_tilde_(std::move(p_z2_tilde)),
      p_z2_(convolve(p_z1_, p_z2_tilde_)) {
  if (!(p_z1_.group() == p_z2_tilde_.group())) {
    throw PreconditionError("broadcast spec: noises on different groups");
  }
  require_gaussian(p_z2_tilde_, "broadcast spec");
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid(201);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = 0.5 * static_cast<double>(i) / 200.0;
  }
  return grid;
}

RateRegionBoundary broadcast_region(const BroadcastSpec& spec,
                                    std::span<const double> alpha_grid) {
  const auto grid = sorted_grid(alpha_grid);
  const int n = spec.n();
  const double h_z1 = entropy(spec.p_z1());
  RateRegionBoundary boundary;
  for (double alpha : grid) {
    const GroupDistribution p_alpha = gaussian_2n(spec.p_z1().group(), alpha);
    const double r1 = entropy(p_alpha) - h_z1;
    const double r2 = n * kLn2 - entropy(convolve(p_alpha, spec.p_z2()));
    boundary.points.push_back(clamped_point(alpha, r1, r2));
  }
  return boundary;
}

RateRegionBoundary broadcast_region_gaussian(const GroupDistribution& p_z1,
                                             const GroupDistribution& p_z2,
                                             std::span<const double> alpha_grid) {
  require_gaussian(p_z1, "broadcast_region_gaussian");
  require_gaussian(p_z2, "broadcast_region_gaussian");
  if (!(p_z1.group() == p_z2.group())) {
    throw PreconditionError("broadcast_region_gaussian: noises on different groups");
  }

  // Degradedness: a1 * t = a2 in the folded two-level parameters, the group
  // analog of tilde_Z2 ~ Bern((p2 - p1)/(1 - 2 p1)).
  const double a1 = folded_coset_mass(p_z1);
  const double a2 = folded_coset_mass(p_z2);
  double t = 0.0;
  if (std::abs(1.0 - 2.0 * a1) < 1e-12) {
    if (std::abs(a2 - 0.5) > 1e-9) {
      throw PreconditionError("broadcast_region_gaussian: degradedness unsolvable");
    }
  } else {
    t = (a2 - a1) / (1.0 - 2.0 * a1);
  }
  if (!(t >= -1e-12 && t <= 0.5 + 1e-12)) {
    throw PreconditionError("broadcast_region_gaussian: degradedness unsolvable");
  }

  const auto grid = sorted_grid(alpha_grid);
  const int n = p_z1.group().exponent();
  const double h_z1 = entropy(p_z1);
  RateRegionBoundary boundary;
  for (double alpha : grid) {
    const GroupDistribution p_alpha = gaussian_2n(p_z1.group(), alpha);
    const double r1 = entropy(convolve(p_alpha, p_z1)) - h_z1;
    const double r2 = n * kLn2 - entropy(convolve(p_alpha, p_z2));
    boundary.points.push_back(clamped_point(alpha, r1, r2));
  }
  return boundary;
}

RateRegionBoundary helper_region(const GroupDistribution& p_z,
                                 std::span<const double> alpha_grid) {
  require_gaussian(p_z, "helper_region");
  const auto grid = sorted_grid(alpha_grid);
  const int n = p_z.group().exponent();
  RateRegionBoundary boundary;
  for (double alpha : grid) {
    const GroupDistribution p_alpha = gaussian_2n(p_z.group(), alpha);
    const double r1 = entropy(convolve(p_alpha, p_z));
    const double r2 = n * kLn2 - entropy(p_alpha);
    boundary.points.push_back(clamped_point(alpha, r1, r2));
  }
  return boundary;
}

double equality_condition_check(const GroupDistribution& a, const GroupDistribution& b) {
  if (!(a.group() == b.group())) {
    throw PreconditionError("equality_condition_check: group mismatch");
  }
  return entropy(convolve(a, b)) - f_group(a.group(), entropy(a), entropy(b));
}

GroupDistribution random_distribution(const FiniteAbelianGroup& group, SplitMix64& rng) {
  return GroupDistribution(group, rng.dirichlet(group.order()));
}

ConditionalSource random_conditional_source(const FiniteAbelianGroup& group, int u_size,
                                            SplitMix64& rng) {
  std::vector<GroupDistribution> rows;
  rows.reserve(static_cast<std::size_t>(u_size));
  for (int u = 0; u < u_size; ++u) rows.push_back(random_distribution(group, rng));
  return ConditionalSource(rng.dirichlet(u_size), std::move(rows));
}

MglSuiteReport run_scalar_mgl_suite(std::span<const FiniteAbelianGroup> groups, int trials,
                                    std::uint64_t seed) {
  if (groups.empty() || trials < 1) throw DomainError("mgl suite: empty setup");
  MglSuiteReport report;
  report.trials = trials;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    SplitMix64 rng = SplitMix64::derived(seed, static_cast<std::uint64_t>(i));
    const auto& group = groups[static_cast<std::size_t>(i) % groups.size()];
    const int u_size = 1 + rng.uniform_int(4);
    const ConditionalSource src = random_conditional_source(group, u_size, rng);
    const GroupDistribution noise = random_distribution(group, rng);
    const double slack = scalar_mgl_check(src, noise);
    report.min_slack = std::min(report.min_slack, slack);
    report.mean_slack += slack / trials;
    if (slack < report.threshold) ++report.violations;
  }
  return report;
}

MglSuiteReport run_vector_mgl_suite(const FiniteAbelianGroup& group, int k, int trials,
                                    std::uint64_t seed) {
  if (trials < 1) throw DomainError("mgl suite: empty setup");
  const FiniteAbelianGroup gk = group.power(k);
  MglSuiteReport report;
  report.trials = trials;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    SplitMix64 rng = SplitMix64::derived(seed, static_cast<std::uint64_t>(i));
    const int u_size = 1 + rng.uniform_int(4);
    const ConditionalSource src = random_conditional_source(gk, u_size, rng);
    const GroupDistribution noise = random_distribution(group, rng);
    const double slack = vector_mgl_check(src, k, noise);
    report.min_slack = std::min(report.min_slack, slack);
    report.mean_slack += slack / trials;
    if (slack < report.threshold) ++report.violations;
  }
  return report;
}

}  // namespace gepi
