#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gepi/closed_form.hpp"
#include "gepi/distribution.hpp"
#include "gepi/entropy.hpp"
#include "gepi/error.hpp"
#include "gepi/random.hpp"

using namespace gepi;

namespace {

const FiniteAbelianGroup kZ4 = FiniteAbelianGroup::cyclic(4);
const FiniteAbelianGroup kZ8 = FiniteAbelianGroup::cyclic(8);

GroupDistribution random_dist(const FiniteAbelianGroup& g, SplitMix64& rng) {
  return GroupDistribution(g, rng.dirichlet(g.order()));
}

double max_abs_diff(const GroupDistribution& a, const GroupDistribution& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("constructor validates and normalizes") {
  CHECK_THROWS_AS(GroupDistribution(kZ4, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(GroupDistribution(kZ4, {0.5, 0.5, 0.1, 0.0}), DomainError);
  CHECK_THROWS_AS(GroupDistribution(kZ4, {0.6, 0.5, -0.1, 0.0}), DomainError);
  // a -1e-16 entry is clamped and the mass renormalized
  const GroupDistribution d(kZ4, {0.5, 0.5 + 1e-16, -1e-16, 0.0});
  CHECK(d[2] == 0.0);
  double mass = 0.0;
  for (int i = 0; i < 4; ++i) mass += d[i];
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("convolution identities") {
  SplitMix64 rng(7);
  const auto p = random_dist(kZ8, rng);
  CHECK(max_abs_diff(convolve(GroupDistribution::point_mass(kZ8, 0), p), p) <= 1e-15);
  CHECK(max_abs_diff(convolve(GroupDistribution::uniform(kZ8), p),
                     GroupDistribution::uniform(kZ8)) <= 1e-15);
  CHECK(max_abs_diff(convolve(GroupDistribution::uniform(kZ4),
                              GroupDistribution::point_mass(kZ4, 0)),
                     GroupDistribution::uniform(kZ4)) <= 1e-15);
  CHECK_THROWS_AS(convolve(GroupDistribution::uniform(kZ4),
                           GroupDistribution::uniform(kZ8)),
                  PreconditionError);
}

TEST_CASE("convolution against an index-arithmetic double sum") {
  const GroupDistribution a(kZ4, {0.1, 0.2, 0.3, 0.4});
  const GroupDistribution b(kZ4, {0.4, 0.3, 0.2, 0.1});
  const auto c = convolve(a, b);
  for (int g = 0; g < 4; ++g) {
    double expect = 0.0;
    for (int h = 0; h < 4; ++h) expect += a[h] * b[((g - h) % 4 + 4) % 4];
    CHECK(c[g] == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("convolution is commutative and associative, mass preserved") {
  SplitMix64 rng(11);
  for (const auto& g : {FiniteAbelianGroup::cyclic(5), FiniteAbelianGroup({2, 4})}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_dist(g, rng);
      const auto b = random_dist(g, rng);
      const auto c = random_dist(g, rng);
      CHECK(max_abs_diff(convolve(a, b), convolve(b, a)) <= 1e-12);
      CHECK(max_abs_diff(convolve(convolve(a, b), c), convolve(a, convolve(b, c))) <=
            1e-12);
      double mass = 0.0;
      for (int i = 0; i < g.order(); ++i) mass += convolve(a, b)[i];
      CHECK(std::abs(mass - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("entropy endpoints") {
  CHECK(entropy(GroupDistribution::point_mass(kZ8, 3)) == 0.0);
  CHECK(entropy(GroupDistribution::uniform(kZ8)) ==
        doctest::Approx(3.0 * kLn2).epsilon(1e-14));
}

TEST_CASE("entropy never drops under convolution") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_dist(kZ8, rng);
    const auto b = random_dist(kZ8, rng);
    CHECK(entropy(convolve(a, b)) >= std::max(entropy(a), entropy(b)) - 1e-10);
  }
}

TEST_CASE("two-level distributions on Z_4") {
  const auto all_on_subgroup = two_level_distribution(kZ4, 1, 1.0);
  CHECK(all_on_subgroup[0] == doctest::Approx(0.5));
  CHECK(all_on_subgroup[1] == 0.0);
  CHECK(all_on_subgroup[2] == doctest::Approx(0.5));
  CHECK(all_on_subgroup[3] == 0.0);
  const auto balanced = two_level_distribution(kZ4, 1, 0.5);
  for (int i = 0; i < 4; ++i) CHECK(balanced[i] == doctest::Approx(0.25));
  CHECK_THROWS_AS(two_level_distribution(kZ4, 2, 0.5), DomainError);
  CHECK_THROWS_AS(two_level_distribution(kZ4, 0, 1.5), DomainError);
}

TEST_CASE("two-level entropy identity k ln 2 + h(alpha)") {
  SplitMix64 rng(17);
  const auto g16 = FiniteAbelianGroup::cyclic(16);
  const auto g224 = FiniteAbelianGroup({2, 2, 4});
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& g = trial % 2 == 0 ? g16 : g224;
    const int k = rng.uniform_int(4);
    const double alpha = rng.uniform01();
    const auto d = two_level_distribution(g, k, alpha);
    CHECK(std::abs(entropy(d) - (k * kLn2 + binary_entropy(alpha))) <= 1e-12);
  }
}

TEST_CASE("gaussian closure under convolution") {
  SplitMix64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const double a = rng.uniform01();
    const double b = rng.uniform01();
    const auto pa = gaussian_2n(kZ4, a);
    const auto pb = gaussian_2n(kZ4, b);
    const auto sum = convolve(pa, pb);
    CHECK(is_gaussian_2n(sum));
    // coset (odd) masses compose by the star of the full-interval parameters
    const double ta = 1.0 - a, tb = 1.0 - b;
    const double expect = ta * (1.0 - tb) + tb * (1.0 - ta);
    CHECK(gaussian_coset_mass(sum) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(entropy(sum) == doctest::Approx(kLn2 + binary_entropy(expect)).epsilon(1e-12));
  }
}

TEST_CASE("gaussian on Z_2 degenerates to the Bernoulli family") {
  const auto d = gaussian_2n(FiniteAbelianGroup::cyclic(2), 0.3);
  CHECK(d[0] == doctest::Approx(0.3));
  CHECK(d[1] == doctest::Approx(0.7));
}

TEST_CASE("gaussian convolved with anything is gaussian") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto any = random_dist(kZ8, rng);
    const auto gauss = gaussian_2n(kZ8, rng.uniform01());
    CHECK(is_gaussian_2n(convolve(gauss, any)));
  }
  CHECK_THROWS_AS(gaussian_2n(FiniteAbelianGroup({2, 2}), 0.5), DomainError);
}

TEST_CASE("translation preserves entropy") {
  SplitMix64 rng(27);
  const auto p = random_dist(kZ8, rng);
  CHECK(entropy(translate(p, 3)) == doctest::Approx(entropy(p)).epsilon(1e-14));
}

TEST_CASE("extremal pairs hit the marginals and the closed form") {
  SplitMix64 rng(29);
  for (const auto& g : {FiniteAbelianGroup::cyclic(2), FiniteAbelianGroup::cyclic(4),
                        FiniteAbelianGroup::cyclic(8), FiniteAbelianGroup({2, 2}),
                        FiniteAbelianGroup({2, 4})}) {
    const int n = g.exponent();
    for (int trial = 0; trial < 200; ++trial) {
      const double x = rng.uniform01() * n * kLn2;
      const double y = rng.uniform01() * n * kLn2;
      const auto [px, py] = extremal_pair(g, x, y);
      CHECK(std::abs(entropy(px) - x) <= 1e-10);
      CHECK(std::abs(entropy(py) - y) <= 1e-10);
      CHECK(std::abs(entropy(convolve(px, py)) - f_2n(n, x, y)) <= 1e-10);
    }
  }
}

TEST_CASE("extremal pair on grid matches f_2n per exponent") {
  for (int n : {1, 2, 3}) {
    const auto g = FiniteAbelianGroup::cyclic(1 << n);
    const int m = 50;
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; j <= m; ++j) {
        const double x = n * kLn2 * i / m;
        const double y = n * kLn2 * j / m;
        const auto [px, py] = extremal_pair(g, x, y);
        CHECK(std::abs(entropy(convolve(px, py)) - f_2n(n, x, y)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("extremal pair degenerate corner") {
  const auto [px, py] = extremal_pair(kZ4, 0.9, 0.0);
  CHECK(entropy(py) == 0.0);
  CHECK(entropy(convolve(px, py)) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK_THROWS_AS(extremal_pair(kZ4, -0.5, 0.1), DomainError);
  CHECK_THROWS_AS(extremal_pair(kZ4, 0.1, 2.0 * kLn2 + 0.1), DomainError);
}
