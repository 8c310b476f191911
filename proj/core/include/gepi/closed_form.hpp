#pragma once

#include <span>

#include "gepi/group.hpp"

namespace gepi {

/// Index k of the box [k ln 2, (k+1) ln 2] holding t, clamped to 0..n-1.
/// Exact multiples of ln 2 belong to the lower box; the two branch formulas
/// of f_2n coincide there.
int entropy_box(double t, int n);

/// Minimum entropy of a sum of two independent Z_{2^n}-valued variables with
/// entropies x and y:
///   k ln 2 + f2(x - k ln 2, y - k ln 2)  when x and y share diagonal box k,
///   max(x, y)                            otherwise.
double f_2n(int n, double x, double y);

/// f_G for an abelian 2-group of order 2^n; equals f_2n(n, x, y).
/// Throws UnsupportedGroupError for non 2-groups (no closed form; use the
/// numeric oracle).
double f_group(const FiniteAbelianGroup& group, double x, double y);

/// Minimum entropy of a k-fold sum on a 2-group of exponent n: the right fold
/// of f_2n over the entropies. The fold runs over a descending sort of xs, so
/// permutations of xs give bit-identical results.
double f_gk(int n, std::span<const double> xs);

/// Direct-sum lower bound min_{u,v} f_{2^{l2}}(u, v) + f_{2^{l1}}(x-u, y-v)
/// over the constraint rectangle, minimized on a uniform grid with local
/// golden-section refinement around the incumbent. order_h = 2^{l2} and
/// order_g = 2^{l1}.
double direct_sum_lower_bound(int order_h, int order_g, double x, double y,
                              int grid_resolution);

}  // namespace gepi
