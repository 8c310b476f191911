#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gepi/applications.hpp"
#include "gepi/closed_form.hpp"
#include "gepi/entropy.hpp"
#include "gepi/error.hpp"

using namespace gepi;

namespace {

const FiniteAbelianGroup kZ2 = FiniteAbelianGroup::cyclic(2);
const FiniteAbelianGroup kZ4 = FiniteAbelianGroup::cyclic(4);
const FiniteAbelianGroup kZ8 = FiniteAbelianGroup::cyclic(8);

GroupDistribution bern(double p) { return GroupDistribution(kZ2, {1.0 - p, p}); }

}  // namespace

TEST_CASE("conditional entropy") {
  SplitMix64 rng(3);
  const auto src1 = ConditionalSource({1.0}, {random_distribution(kZ4, rng)});
  CHECK(conditional_entropy(src1) == doctest::Approx(entropy(src1.rows()[0])));

  // equal rows make the mixture weights irrelevant
  const auto row = random_distribution(kZ4, rng);
  const auto equal_rows = ConditionalSource({0.2, 0.8}, {row, row});
  CHECK(conditional_entropy(equal_rows) == doctest::Approx(entropy(row)).epsilon(1e-14));

  // random 3-row source against the joint-table identity H(X|U) = H(X,U) - H(U)
  std::vector<GroupDistribution> rows{random_distribution(kZ4, rng),
                                      random_distribution(kZ4, rng),
                                      random_distribution(kZ4, rng)};
  std::vector<double> u = rng.dirichlet(3);
  double joint = 0.0, hu = 0.0;
  for (int i = 0; i < 3; ++i) {
    hu -= u[i] > 0 ? u[i] * std::log(u[i]) : 0.0;
    for (int g = 0; g < 4; ++g) {
      const double p = u[i] * rows[i][g];
      if (p > 0) joint -= p * std::log(p);
    }
  }
  const auto src = ConditionalSource(u, rows);
  CHECK(conditional_entropy(src) == doctest::Approx(joint - hu).epsilon(1e-12));

  CHECK_THROWS_AS(ConditionalSource({0.5, 0.4}, rows), DomainError);
}

TEST_CASE("scalar MGL slack vanishes in the degenerate cases") {
  SplitMix64 rng(5);
  const auto src = random_conditional_source(kZ8, 3, rng);
  // noiseless channel
  CHECK(std::abs(scalar_mgl_check(src, GroupDistribution::point_mass(kZ8, 0))) <= 1e-12);
  // uniform rows absorb any noise
  const auto uniform_rows = ConditionalSource(
      {0.5, 0.5}, {GroupDistribution::uniform(kZ8), GroupDistribution::uniform(kZ8)});
  CHECK(std::abs(scalar_mgl_check(uniform_rows, random_distribution(kZ8, rng))) <= 1e-12);
}

TEST_CASE("scalar MGL Monte Carlo suites stay nonnegative") {
  const FiniteAbelianGroup groups[] = {kZ4, kZ8, FiniteAbelianGroup({2, 4})};
  const auto report = run_scalar_mgl_suite(groups, 2000, 7);
  INFO("min slack ", report.min_slack);
  CHECK(report.min_slack >= -1e-9);
  CHECK(report.violations == 0);
  CHECK(report.trials == 2000);
}

TEST_CASE("scalar MGL on a non 2-group needs the numeric fallback") {
  SplitMix64 rng(9);
  const auto g6 = FiniteAbelianGroup::cyclic(6);
  const auto src = random_conditional_source(g6, 2, rng);
  const auto noise = random_distribution(g6, rng);
  CHECK_THROWS_AS(scalar_mgl_check(src, noise), UnsupportedGroupError);
  MinimizationConfig cfg;
  cfg.restarts = 4;
  CHECK(scalar_mgl_check(src, noise, &cfg) >= -1e-6);
}

TEST_CASE("vector MGL reduces to scalar at k=1 and factorizes for iid rows") {
  SplitMix64 rng(11);
  const auto src = random_conditional_source(kZ4, 3, rng);
  const auto noise = random_distribution(kZ4, rng);
  CHECK(vector_mgl_check(src, 1, noise) ==
        doctest::Approx(scalar_mgl_check(src, noise)).epsilon(1e-12));

  // X^2 iid given U: the per-letter slack matches the scalar slack
  std::vector<GroupDistribution> rows2;
  const auto gk = kZ4.power(2);
  for (const auto& row : src.rows()) {
    std::vector<double> joint(16);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) joint[static_cast<std::size_t>(a * 4 + b)] = row[a] * row[b];
    }
    rows2.emplace_back(gk, std::move(joint));
  }
  const auto src2 = ConditionalSource(src.u_probs(), std::move(rows2));
  CHECK(vector_mgl_check(src2, 2, noise) ==
        doctest::Approx(scalar_mgl_check(src, noise)).epsilon(1e-10));
}

TEST_CASE("vector MGL Monte Carlo suite stays nonnegative") {
  const auto report = run_vector_mgl_suite(kZ4, 2, 300, 13);
  INFO("min slack ", report.min_slack);
  CHECK(report.min_slack >= -1e-9);
  CHECK(report.violations == 0);
}

TEST_CASE("vector MGL capacity guard") {
  const auto g16 = FiniteAbelianGroup::cyclic(16);
  const auto gk = g16.power(3);
  const auto row = GroupDistribution::uniform(gk);
  CHECK_THROWS_AS(vector_mgl_check(ConditionalSource({0.5, 0.5}, {row, row}), 3,
                                   GroupDistribution::uniform(g16)),
                  CapacityError);
}

TEST_CASE("broadcast spec validates the Gaussian hypothesis") {
  SplitMix64 rng(17);
  CHECK_THROWS_AS(BroadcastSpec(gaussian_2n(kZ4, 0.4), random_distribution(kZ4, rng)),
                  PreconditionError);
  const BroadcastSpec spec(random_distribution(kZ4, rng), gaussian_2n(kZ4, 0.8));
  CHECK(is_gaussian_2n(spec.p_z2()));  // degraded noise is Gaussian again
}

TEST_CASE("broadcast region sweeps monotonically") {
  SplitMix64 rng(19);
  const BroadcastSpec spec(random_distribution(kZ8, rng), gaussian_2n(kZ8, 0.85));
  const auto grid = default_alpha_grid();
  const auto region = broadcast_region(spec, grid);
  REQUIRE(region.points.size() == grid.size());
  for (std::size_t i = 1; i < region.points.size(); ++i) {
    CHECK(region.points[i].alpha >= region.points[i - 1].alpha);
    CHECK(region.points[i].r1 >= region.points[i - 1].r1 - 1e-12);  // R1 grows
    CHECK(region.points[i].r2 <= region.points[i - 1].r2 + 1e-12);  // R2 falls
  }
  for (const auto& pt : region.points) {
    CHECK(pt.r1 >= 0.0);
    CHECK(pt.r2 >= 0.0);
  }
  // uniform p_alpha kills R2
  CHECK(region.points.back().r2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(region.points.back().r1 ==
        doctest::Approx(3.0 * kLn2 - entropy(spec.p_z1())).epsilon(1e-12));
}

TEST_CASE("gaussian broadcast region reduces to the binary BS-BC display") {
  const double p1 = 0.1;
  const double tilde = 0.15;
  const double p2 = p1 * (1.0 - tilde) + tilde * (1.0 - p1);
  const auto region =
      broadcast_region_gaussian(bern(p1), bern(p2), default_alpha_grid());
  for (const auto& pt : region.points) {
    // gaussian_2n on Z_2 puts mass alpha on 0, so the crossover is 1 - alpha
    const double a = 1.0 - pt.alpha;
    const double r1 = binary_entropy(a * (1.0 - p1) + p1 * (1.0 - a)) - binary_entropy(p1);
    const double r2 = kLn2 - binary_entropy(a * (1.0 - p2) + p2 * (1.0 - a));
    CHECK(std::abs(pt.r1 - std::max(0.0, r1)) <= 1e-12);
    CHECK(std::abs(pt.r2 - std::max(0.0, r2)) <= 1e-12);
  }
}

TEST_CASE("gaussian broadcast degradedness solver") {
  CHECK_THROWS_AS(
      broadcast_region_gaussian(bern(0.3), bern(0.1), default_alpha_grid()),
      PreconditionError);
  // equal noises degrade with a point-mass tilde; the boundary collapses to
  // R1 + R2 = ln 2 - H(p_1)
  const auto region =
      broadcast_region_gaussian(bern(0.2), bern(0.2), default_alpha_grid());
  for (const auto& pt : region.points) {
    CHECK(std::abs(pt.r1 + pt.r2 - (kLn2 - binary_entropy(0.2))) <= 1e-9);
  }
}

TEST_CASE("helper region reduces to the binary DSBS display") {
  const double p = 0.12;
  const auto region = helper_region(bern(p), default_alpha_grid());
  for (const auto& pt : region.points) {
    const double a = 1.0 - pt.alpha;
    CHECK(std::abs(pt.r1 - binary_entropy(a * (1.0 - p) + p * (1.0 - a))) <= 1e-12);
    CHECK(std::abs(pt.r2 - (kLn2 - binary_entropy(a))) <= 1e-12);
  }
  SplitMix64 rng(23);
  CHECK_THROWS_AS(helper_region(random_distribution(kZ4, rng), default_alpha_grid()),
                  PreconditionError);
}

TEST_CASE("helper region corners") {
  const auto pz = gaussian_2n(kZ8, 0.75);
  const double grid[] = {0.0, 0.5};
  const auto region = helper_region(pz, grid);
  REQUIRE(region.points.size() == 2);
  // degenerate Gaussian floor: p_alpha uniform on the coset
  CHECK(region.points[0].r2 == doctest::Approx(kLn2).epsilon(1e-12));
  CHECK(region.points[0].r1 ==
        doctest::Approx(entropy(convolve(gaussian_2n(kZ8, 0.0), pz))).epsilon(1e-12));
  // uniform p_alpha
  CHECK(region.points[1].r1 == doctest::Approx(3.0 * kLn2).epsilon(1e-12));
  CHECK(region.points[1].r2 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("equality condition holds exactly on Gaussian pairs") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = gaussian_2n(kZ8, rng.uniform01());
    const auto b = gaussian_2n(kZ8, rng.uniform01());
    CHECK(std::abs(equality_condition_check(a, b)) <= 1e-9);
  }
  // p_b a point mass
  const auto any = random_distribution(kZ8, rng);
  CHECK(std::abs(equality_condition_check(any, GroupDistribution::point_mass(kZ8, 0))) <=
        1e-9);
  // random pairs are nonnegative
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_distribution(kZ8, rng);
    const auto q = random_distribution(kZ8, rng);
    CHECK(equality_condition_check(p, q) >= -1e-9);
  }
}
