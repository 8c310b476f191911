#pragma once

#include <optional>
#include <string>

#include "gepi/polynomial.hpp"

namespace gepi {

/// Named functions of the derivative-monotonicity analysis: M, N, L and L',
/// the ray functional A(p, k) with B = dA/dp, the boundary-inequality
/// function F with its displayed derivatives, and the F^{(5)} numerator
/// polynomials.
enum class AppendixFunctionId { M, N, L, Lprime, A, B, F, F1, F2, F3, F5, P1, P2, P3 };

/// Evaluates one of the named functions at p (and k where the function needs
/// it; q = (k-p)/(1-2p) is derived internally). Removable singularities use
/// their limits: L(0) = 0 and L'(0) = 1. p must be strictly inside (0, 1/2)
/// except for the F family and the polynomials, which extend to p = 1/2.
double eval_appendix(AppendixFunctionId id, double p, std::optional<double> k = {});

/// Exact quintic factors of the F^{(5)} numerator polynomials.
const Polynomial& p1_hat();
const Polynomial& p2_hat();

/// Exact P1, P2, P3 with their leading monomial factors.
const Polynomial& p1_full();
const Polynomial& p2_full();
const Polynomial& p3_full();

enum class ClaimId { np, lp, Fp, p1p2, dfdx_ray, poly_bound_identity };

ClaimId claim_from_string(const std::string& name);
std::string claim_name(ClaimId id);

struct ClaimReport {
  std::string claim;
  double max_violation = 0.0;  // worst observed margin; <= 0 passes
  bool pass = false;
  std::string details;
};

/// Checks one appendix claim on a grid of the given size (>= 100):
///   np    — N strictly decreasing on (0, 1/2)
///   lp    — L strictly increasing and L' >= 1
///   Fp    — F <= 0
///   p1p2  — P1, P2 >= 0 on [0, 1/2] via exact Sturm root counts
///   dfdx_ray — df2/dx strictly decreasing along rays through the origin
///   poly_bound_identity — the F^{(5)} upper-bound factorization as an exact
///                         rational polynomial identity
ClaimReport verify_claim(ClaimId id, int grid_size);

}  // namespace gepi
