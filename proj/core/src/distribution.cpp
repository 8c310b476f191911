#include "gepi/distribution.hpp"

#include <cmath>

#include "gepi/closed_form.hpp"
#include "gepi/entropy.hpp"
#include "gepi/error.hpp"

namespace gepi {

namespace {

constexpr double kMassTol = 1e-12;
constexpr double kNegClamp = -1e-15;

}  // namespace

GroupDistribution::GroupDistribution(FiniteAbelianGroup group, std::vector<double> probs)
    : group_(std::move(group)), probs_(std::move(probs)) {
  if (static_cast<int>(probs_.size()) != group_.order()) {
    throw DomainError("distribution: length does not match group order");
  }
  double mass = 0.0;
  for (double& p : probs_) {
    if (p < kNegClamp) throw DomainError("distribution: negative probability");
    if (p < 0.0) p = 0.0;
    mass += p;
  }
  if (std::abs(mass - 1.0) > kMassTol) {
    throw DomainError("distribution: mass not 1 within 1e-12");
  }
  for (double& p : probs_) p /= mass;
}

GroupDistribution GroupDistribution::point_mass(const FiniteAbelianGroup& group, int at) {
  if (at < 0 || at >= group.order()) throw DomainError("point_mass: element out of range");
  std::vector<double> probs(static_cast<std::size_t>(group.order()), 0.0);
  probs[static_cast<std::size_t>(at)] = 1.0;
  return GroupDistribution(group, std::move(probs));
}

GroupDistribution GroupDistribution::uniform(const FiniteAbelianGroup& group) {
  std::vector<double> probs(static_cast<std::size_t>(group.order()),
                            1.0 / group.order());
  return GroupDistribution(group, std::move(probs));
}

GroupDistribution convolve(const GroupDistribution& a, const GroupDistribution& b) {
  if (!(a.group() == b.group())) throw PreconditionError("convolve: group mismatch");
  const auto& g = a.group();
  const int n = g.order();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      out[static_cast<std::size_t>(g.add(i, j))] += ai * b[j];
    }
  }
  return GroupDistribution(g, std::move(out));
}

double entropy(const GroupDistribution& d) {
  double h = 0.0;
  for (double p : d.probs()) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h < 0.0 ? 0.0 : h;
}

GroupDistribution translate(const GroupDistribution& d, int shift) {
  const auto& g = d.group();
  std::vector<double> out(static_cast<std::size_t>(g.order()));
  for (int e = 0; e < g.order(); ++e) {
    out[static_cast<std::size_t>(g.add(e, shift))] = d[e];
  }
  return GroupDistribution(g, std::move(out));
}

GroupDistribution two_level_distribution(const FiniteAbelianGroup& group, int level,
                                         double alpha, std::optional<int> offset) {
  const int n = group.exponent();
  if (level < 0 || level > n - 1) throw DomainError("two_level: level out of range");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("two_level: alpha outside [0, 1]");

  const auto chain = SubgroupChain::canonical(group);
  const int rep = offset.value_or(chain.default_offset(level));
  if (rep < 0 || rep >= group.order() || chain.contains(level, rep) ||
      !chain.contains(level + 1, rep)) {
    throw DomainError("two_level: offset does not select a coset of level k in level k+1");
  }

  const double sub = static_cast<double>(1 << level);
  std::vector<double> probs(static_cast<std::size_t>(group.order()), 0.0);
  for (int e : chain.level(level)) {
    probs[static_cast<std::size_t>(e)] = alpha / sub;
    probs[static_cast<std::size_t>(group.add(e, rep))] = (1.0 - alpha) / sub;
  }
  return GroupDistribution(group, std::move(probs));
}

GroupDistribution gaussian_2n(const FiniteAbelianGroup& group, double alpha) {
  if (group.cyclic_orders().size() != 1) {
    throw DomainError("gaussian_2n: group must be cyclic");
  }
  const int n = group.exponent();
  return two_level_distribution(group, n - 1, alpha);
}

bool is_gaussian_2n(const GroupDistribution& d, double tol) {
  const auto& group = d.group();
  if (!group.is_two_group()) return false;
  const int n = group.exponent();
  const auto chain = SubgroupChain::canonical(group);
  double sub_val = -1.0, coset_val = -1.0;
  for (int e = 0; e < group.order(); ++e) {
    double& ref = chain.contains(n - 1, e) ? sub_val : coset_val;
    if (ref < 0.0) {
      ref = d[e];
    } else if (std::abs(d[e] - ref) > tol) {
      return false;
    }
  }
  return true;
}

double gaussian_coset_mass(const GroupDistribution& d) {
  const auto& group = d.group();
  const int n = group.exponent();
  const auto chain = SubgroupChain::canonical(group);
  double mass = 0.0;
  for (int e = 0; e < group.order(); ++e) {
    if (!chain.contains(n - 1, e)) mass += d[e];
  }
  return mass;
}

std::pair<GroupDistribution, GroupDistribution> extremal_pair(
    const FiniteAbelianGroup& group, double x, double y) {
  const int n = group.exponent();
  const double top = n * kLn2;
  constexpr double kSlack = 1e-12;
  if (!(x >= -kSlack && x <= top + kSlack && y >= -kSlack && y <= top + kSlack)) {
    throw DomainError("extremal_pair: entropies outside [0, n ln 2]");
  }
  x = std::min(std::max(x, 0.0), top);
  y = std::min(std::max(y, 0.0), top);

  // Put the larger mass on the subgroup: with alpha = 1 - h^{-1}(x - k ln 2)
  // the degenerate corner (x = k ln 2) collapses onto the subgroup itself.
  const auto level_dist = [&](double value, int k) {
    const double alpha = 1.0 - inverse_binary_entropy(value - k * kLn2);
    return two_level_distribution(group, k, alpha);
  };

  // On the diagonal box both marginals share the level-k coset pair and the
  // convolution is again two-level with parameter alpha * beta. Off the
  // diagonal the lower box is supported inside the higher box's subgroup, so
  // the convolution reproduces the higher marginal and attains max(x, y).
  return {level_dist(x, entropy_box(x, n)), level_dist(y, entropy_box(y, n))};
}

}  // namespace gepi
