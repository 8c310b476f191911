#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gepi/distribution.hpp"

namespace gepi {

/// Knobs for the brute-force minimizer. Identical config and seed give
/// bit-identical results; doubling restarts only extends the start pool.
struct MinimizationConfig {
  int restarts = 8;                   // random (Dirichlet) starts
  int max_iterations = 250;           // descent rounds per start
  double entropy_tolerance = 1e-9;    // feasibility slack on the marginals
  double initial_step = 0.25;         // backtracking step schedule
  double step_shrink = 0.5;
  double step_grow = 1.3;
  double min_step = 1e-11;
  std::uint64_t seed = 1;
  int coarse_grid_resolution = 60;    // simplex mesh per coordinate, |G| <= 5
  long coarse_pair_budget = 200000;   // mesh pairs evaluated (deterministic stride)
};

struct MinimizationResult {
  double value = 0.0;
  std::vector<GroupDistribution> argmin;
  std::vector<double> achieved_entropies;
  bool converged = false;
  int restarts_used = 0;
};

/// Best found value of H(X+Y) over independent G-valued X, Y with
/// H(X) = x, H(Y) = y, both enforced by exact one-dimensional entropy
/// restoration after every step. Realizes the defining minimum of f_G
/// numerically; for 2-groups the extremal pair seeds the start pool, so the
/// result does not exceed the closed form.
MinimizationResult min_sum_entropy(const FiniteAbelianGroup& group, double x, double y,
                                   const MinimizationConfig& config = {});

/// k-marginal variant, minimizing H(X_1 + ... + X_k). Guards: k <= 4 and
/// |G| <= 16.
MinimizationResult min_sum_entropy_k(const FiniteAbelianGroup& group,
                                     std::span<const double> xs,
                                     const MinimizationConfig& config = {});

struct ConvexityViolation {
  double fixed_value;        // the frozen coordinate
  double axis_point;         // grid point where the dip occurred
  double second_difference;  // value below -tolerance
};

struct ConvexityReport {
  std::vector<int> cyclic_orders;
  double tolerance = 0.0;
  double min_second_difference = 0.0;
  std::vector<ConvexityViolation> violations;
  std::string note;
  bool pass() const { return violations.empty(); }
};

/// For each fixed y, computes the numeric f_G along the axis grid and reports
/// every discrete second difference below -tolerance. Flagged triples are
/// re-run at doubled effort before being reported. |G| <= 8. The grid is
/// assumed uniformly spaced. An empty report is consistent with coordinate
/// convexity of f_G; it is a numerical consistency check, not a proof.
ConvexityReport convexity_scan(const FiniteAbelianGroup& group,
                               std::span<const double> axis_grid,
                               std::span<const double> fixed_values,
                               const MinimizationConfig& config = {},
                               double tolerance = 1e-6);

}  // namespace gepi
