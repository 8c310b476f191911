#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gepi/distribution.hpp"
#include "gepi/oracle.hpp"
#include "gepi/random.hpp"

namespace gepi {

/// A finite auxiliary variable U together with a conditional distribution
/// X | U = u over a group, one row per u.
class ConditionalSource {
 public:
  ConditionalSource(std::vector<double> u_probs, std::vector<GroupDistribution> rows);

  const std::vector<double>& u_probs() const { return u_probs_; }
  const std::vector<GroupDistribution>& rows() const { return rows_; }
  const FiniteAbelianGroup& group() const { return rows_.front().group(); }
  int u_size() const { return static_cast<int>(rows_.size()); }

 private:
  std::vector<double> u_probs_;
  std::vector<GroupDistribution> rows_;
};

/// H(X|U) = sum_u P(u) H(X | U = u).
double conditional_entropy(const ConditionalSource& src);

/// Slack of the scalar MGL, H(Y|U) - f_G(H(X|U), H(Z)) with Y|U=u the
/// convolution of X|U=u with the noise; nonnegative by the theorem. For non
/// 2-groups pass a config to fall back to the numeric oracle for f_G.
double scalar_mgl_check(const ConditionalSource& src, const GroupDistribution& noise,
                        const MinimizationConfig* numeric_fg = nullptr);

/// Slack of the vector MGL, H(Y^k|U)/k - f_G(H(X^k|U)/k, H(Z)), for a joint
/// source over U x G^k and i.i.d. per-letter noise on G. The source rows live
/// on the product group noise.group().power(k); |U| |G|^k <= 4096.
double vector_mgl_check(const ConditionalSource& src_on_gk, int k,
                        const GroupDistribution& per_letter_noise);

/// Degraded broadcast channel on Z_{2^n} with arbitrary first-hop noise and a
/// 2^n-ary Gaussian degrading noise; p_z2 = p_z1 * p_z2_tilde is derived.
class BroadcastSpec {
 public:
  BroadcastSpec(GroupDistribution p_z1, GroupDistribution p_z2_tilde);

  int n() const { return p_z1_.group().exponent(); }
  const GroupDistribution& p_z1() const { return p_z1_; }
  const GroupDistribution& p_z2_tilde() const { return p_z2_tilde_; }
  const GroupDistribution& p_z2() const { return p_z2_; }

 private:
  GroupDistribution p_z1_;
  GroupDistribution p_z2_tilde_;
  GroupDistribution p_z2_;
};

struct RateRegionPoint {
  double alpha;
  double r1;
  double r2;
  bool clamped;  // a negative rate was clamped to zero
};

struct RateRegionBoundary {
  std::vector<RateRegionPoint> points;  // ascending in alpha
};

/// 201 uniformly spaced Gaussian parameters in [0, 1/2].
std::vector<double> default_alpha_grid();

/// Capacity boundary sweep R1 = H(p_a) - H(p_Z1), R2 = n ln 2 - H(p_a * p_Z2)
/// over Gaussian p_a, rates clamped at zero.
RateRegionBoundary broadcast_region(const BroadcastSpec& spec,
                                    std::span<const double> alpha_grid);

/// Both-noises-Gaussian sweep R1 = H(p_a * p_Z1) - H(p_Z1),
/// R2 = n ln 2 - H(p_a * p_Z2). Degradedness must be solvable with a Gaussian
/// p_tilde: the folded two-level parameters must satisfy a1 * t = a2 for some
/// t in [0, 1/2].
RateRegionBoundary broadcast_region_gaussian(const GroupDistribution& p_z1,
                                             const GroupDistribution& p_z2,
                                             std::span<const double> alpha_grid);

/// Helper source-coding sweep R1 = H(p_a * p_Z), R2 = n ln 2 - H(p_a) over
/// Gaussian p_a; p_Z must be Gaussian.
RateRegionBoundary helper_region(const GroupDistribution& p_z,
                                 std::span<const double> alpha_grid);

/// H(p_a * p_b) - f_{2^n}(H(p_a), H(p_b)): zero for an equality-achieving
/// pair (both Gaussian), nonnegative always.
double equality_condition_check(const GroupDistribution& a, const GroupDistribution& b);

GroupDistribution random_distribution(const FiniteAbelianGroup& group, SplitMix64& rng);
ConditionalSource random_conditional_source(const FiniteAbelianGroup& group, int u_size,
                                            SplitMix64& rng);

struct MglSuiteReport {
  int trials = 0;
  double min_slack = 0.0;
  double mean_slack = 0.0;
  int violations = 0;  // slack below the threshold
  double threshold = -1e-9;
};

/// Monte Carlo sweep of scalar_mgl_check over random (U, X|U, Z) instances,
/// cycling through the given groups; |U| drawn from {1,2,3,4}.
MglSuiteReport run_scalar_mgl_suite(std::span<const FiniteAbelianGroup> groups, int trials,
                                    std::uint64_t seed);

/// Monte Carlo sweep of vector_mgl_check over random joint (U, X^k) tables.
MglSuiteReport run_vector_mgl_suite(const FiniteAbelianGroup& group, int k, int trials,
                                    std::uint64_t seed);

}  // namespace gepi
