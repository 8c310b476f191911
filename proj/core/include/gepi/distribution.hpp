#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gepi/group.hpp"

namespace gepi {

/// A probability distribution over the elements of a finite abelian group,
/// stored densely. Entries within -1e-15 of zero are clamped to 0 and the
/// vector renormalized; the mass must be 1 within 1e-12 before that.
class GroupDistribution {
 public:
  GroupDistribution(FiniteAbelianGroup group, std::vector<double> probs);

  static GroupDistribution point_mass(const FiniteAbelianGroup& group, int at);
  static GroupDistribution uniform(const FiniteAbelianGroup& group);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<double>& probs() const { return probs_; }
  double operator[](int element) const { return probs_[static_cast<std::size_t>(element)]; }
  int size() const { return group_.order(); }

 private:
  FiniteAbelianGroup group_;
  std::vector<double> probs_;
};

/// Group convolution: result[g] = sum_h a[h] b[g-h]. Groups must match.
GroupDistribution convolve(const GroupDistribution& a, const GroupDistribution& b);

/// Shannon entropy in nats.
double entropy(const GroupDistribution& d);

GroupDistribution translate(const GroupDistribution& d, int shift);

/// Quasi-uniform two-level distribution on a 2-group of order 2^n: mass alpha
/// spread uniformly over chain level k (C_0) and mass 1-alpha uniformly over
/// the coset C_1 = offset + level k inside level k+1. Entropy is
/// k ln 2 + h(alpha). The default offset is the smallest element of level k+1
/// outside level k.
GroupDistribution two_level_distribution(const FiniteAbelianGroup& group, int level,
                                         double alpha, std::optional<int> offset = {});

/// The 2^n-ary Gaussian on cyclic Z_{2^n}: constant on each coset of the
/// index-2 subgroup, i.e. two_level_distribution at level n-1.
GroupDistribution gaussian_2n(const FiniteAbelianGroup& group, double alpha);

/// True when d is constant on each coset of the index-2 canonical subgroup.
bool is_gaussian_2n(const GroupDistribution& d, double tol = 1e-9);

/// Mass on the nontrivial coset of the index-2 canonical subgroup (for a
/// Gaussian on Z_2 this is the usual Bernoulli crossover parameter).
double gaussian_coset_mass(const GroupDistribution& d);

/// Distributions attaining f_{2^n}(x, y) on a 2-group of order 2^n:
/// entropy(first) = x, entropy(second) = y, and the entropy of their
/// convolution equals the closed form, all within 1e-10.
std::pair<GroupDistribution, GroupDistribution> extremal_pair(
    const FiniteAbelianGroup& group, double x, double y);

}  // namespace gepi
