#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gepi/entropy.hpp"
#include "gepi/error.hpp"
#include "gepi/io.hpp"

using namespace gepi;

TEST_CASE("group descriptor grammar") {
  CHECK(parse_group_descriptor("z4").cyclic_orders() == std::vector<int>{4});
  CHECK(parse_group_descriptor("z2xz4").cyclic_orders() == std::vector<int>{2, 4});
  CHECK(parse_group_descriptor("Z8").order() == 8);
  CHECK(group_descriptor(FiniteAbelianGroup({2, 4})) == "z2xz4");
  CHECK_THROWS_AS(parse_group_descriptor("q4"), DomainError);
  CHECK_THROWS_AS(parse_group_descriptor("z"), DomainError);
  CHECK_THROWS_AS(parse_group_descriptor("z1"), DomainError);
  CHECK_THROWS_AS(parse_group_descriptor(""), DomainError);
}

TEST_CASE("distribution literals accept numbers and exact decimal strings") {
  const auto j = nlohmann::json::parse(
      R"({"cyclic_orders":[4],"probs":["0.25",0.25,"0.25",0.25]})");
  const auto d = distribution_from_json(j);
  CHECK(d.group().order() == 4);
  for (int i = 0; i < 4; ++i) CHECK(d[i] == doctest::Approx(0.25));

  const auto round = distribution_to_json(d);
  const auto d2 = distribution_from_json(round);
  for (int i = 0; i < 4; ++i) CHECK(d2[i] == doctest::Approx(d[i]).epsilon(1e-11));

  CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(R"({"probs":[1.0]})")),
                  DomainError);
  CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(
                      R"({"cyclic_orders":[2],"probs":["x","y"]})")),
                  DomainError);
}

TEST_CASE("broadcast spec file") {
  const auto j = nlohmann::json::parse(R"({
    "p_z1": {"cyclic_orders":[4], "probs":[0.7, 0.1, 0.1, 0.1]},
    "p_z2_tilde": {"cyclic_orders":[4], "probs":[0.4, 0.1, 0.4, 0.1]}
  })");
  const auto spec = broadcast_spec_from_json(j);
  CHECK(spec.n() == 2);
  CHECK(is_gaussian_2n(spec.p_z2_tilde()));
  CHECK_THROWS_AS(broadcast_spec_from_json(nlohmann::json::object()), DomainError);
}

TEST_CASE("12-significant-digit formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(kLn2) == "0.69314718056");
}

TEST_CASE("region serialization") {
  RateRegionBoundary boundary;
  boundary.points.push_back({0.0, 1.5, 0.25, false});
  boundary.points.push_back({0.5, 2.0, 0.0, true});
  const std::string csv = region_to_csv(boundary);
  CHECK(csv == "alpha,R1,R2\n0,1.5,0.25\n0.5,2,0\n");
  // the bits flag only rescales rates
  const std::string bits = region_to_csv(boundary, 1.0 / kLn2);
  CHECK(bits.find("2.16404256133") != std::string::npos);
  const auto j = region_to_json(boundary);
  CHECK(j["points"].size() == 2);
  CHECK(j["points"][1]["clamped"] == true);
}
