#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gepi/appendix.hpp"
#include "gepi/entropy.hpp"
#include "gepi/error.hpp"

using namespace gepi;

namespace {

double fd(AppendixFunctionId f, double p, double h = 1e-6) {
  return (eval_appendix(f, p + h) - eval_appendix(f, p - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("domain handling") {
  CHECK_THROWS_AS(eval_appendix(AppendixFunctionId::M, 0.0), DomainError);
  CHECK_THROWS_AS(eval_appendix(AppendixFunctionId::M, 0.5), DomainError);
  CHECK_THROWS_AS(eval_appendix(AppendixFunctionId::A, 0.2), DomainError);  // missing k
  CHECK_THROWS_AS(eval_appendix(AppendixFunctionId::A, 0.2, 0.1), DomainError);
  CHECK_NOTHROW(eval_appendix(AppendixFunctionId::F, 0.5));
}

TEST_CASE("F vanishes at 1/2 and stays nonpositive") {
  CHECK(eval_appendix(AppendixFunctionId::F, 0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(eval_appendix(AppendixFunctionId::F, 0.25) ==
        doctest::Approx(-0.0082013497429703).epsilon(1e-10));
  for (int i = 1; i <= 500; ++i) {
    const double p = 0.5 * i / 501.0;
    CHECK(eval_appendix(AppendixFunctionId::F, p) <= 1e-12);
  }
}

TEST_CASE("displayed derivatives have the paper's boundary values") {
  CHECK(eval_appendix(AppendixFunctionId::F1, 1e-9) == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(std::abs(eval_appendix(AppendixFunctionId::F1, 0.5)) <= 1e-10);
  CHECK(std::abs(eval_appendix(AppendixFunctionId::F2, 0.5)) <= 1e-10);
  CHECK(eval_appendix(AppendixFunctionId::F2, 1e-4) > 10.0);   // +infinity limit
  CHECK(eval_appendix(AppendixFunctionId::F3, 1e-4) < -10.0);  // -infinity limit
  CHECK(eval_appendix(AppendixFunctionId::F3, 0.5) > 0.0);
}

TEST_CASE("displayed derivatives agree with finite differences of F") {
  for (double p : {0.1, 0.2, 0.3, 0.45}) {
    CHECK(eval_appendix(AppendixFunctionId::F1, p) ==
          doctest::Approx(fd(AppendixFunctionId::F, p)).epsilon(1e-6));
    CHECK(eval_appendix(AppendixFunctionId::F2, p) ==
          doctest::Approx(fd(AppendixFunctionId::F1, p)).epsilon(1e-6));
    CHECK(eval_appendix(AppendixFunctionId::F3, p) ==
          doctest::Approx(fd(AppendixFunctionId::F2, p)).epsilon(1e-6));
    // F4 is not displayed; cross-check F5 as the second difference of F3
    const double h = 1e-4;
    const double f5_fd = (eval_appendix(AppendixFunctionId::F3, p + h) -
                          2.0 * eval_appendix(AppendixFunctionId::F3, p) +
                          eval_appendix(AppendixFunctionId::F3, p - h)) /
                         (h * h);
    CHECK(eval_appendix(AppendixFunctionId::F5, p) == doctest::Approx(f5_fd).epsilon(1e-3));
  }
}

TEST_CASE("F5 is nonpositive") {
  for (int i = 1; i <= 1000; ++i) {
    const double p = 0.5 * i / 1001.0;
    CHECK(eval_appendix(AppendixFunctionId::F5, p) <= 1e-10);
  }
}

TEST_CASE("L limits and slope floor") {
  CHECK(eval_appendix(AppendixFunctionId::L, 1e-15) == 0.0);
  CHECK(eval_appendix(AppendixFunctionId::Lprime, 1e-15) == 1.0);
  for (int i = 1; i <= 1000; ++i) {
    const double p = 0.5 * i / 1001.0;
    CHECK(eval_appendix(AppendixFunctionId::Lprime, p) >= 1.0);
  }
}

TEST_CASE("A and B are consistent: B is dA/dp at fixed k") {
  for (double p : {0.05, 0.15, 0.3}) {
    for (double k : {0.32, 0.4, 0.45}) {
      if (k <= p) continue;
      const double h = 1e-7;
      const double fd_b = (eval_appendix(AppendixFunctionId::A, p + h, k) -
                           eval_appendix(AppendixFunctionId::A, p - h, k)) /
                          (2.0 * h);
      CHECK(eval_appendix(AppendixFunctionId::B, p, k) ==
            doctest::Approx(fd_b).epsilon(1e-5));
    }
  }
}

TEST_CASE("B(p, p) stays nonpositive") {
  for (int i = 1; i <= 1000; ++i) {
    const double p = 0.5 * i / 1001.0;
    CHECK(eval_appendix(AppendixFunctionId::B, p, p) <= 1e-10);
  }
  CHECK(eval_appendix(AppendixFunctionId::B, 0.25, 0.25) ==
        doctest::Approx(-0.05833780670799).epsilon(1e-9));
}

TEST_CASE("verify_claim covers every appendix claim") {
  for (ClaimId id : {ClaimId::np, ClaimId::lp, ClaimId::Fp, ClaimId::p1p2,
                     ClaimId::dfdx_ray, ClaimId::poly_bound_identity}) {
    const auto report = verify_claim(id, 300);
    INFO(report.claim, ": ", report.details);
    CHECK(report.pass);
  }
  CHECK_THROWS_AS(verify_claim(ClaimId::np, 50), DomainError);
}

TEST_CASE("claim ids round trip through names") {
  for (ClaimId id : {ClaimId::np, ClaimId::lp, ClaimId::Fp, ClaimId::p1p2,
                     ClaimId::dfdx_ray, ClaimId::poly_bound_identity}) {
    CHECK(claim_from_string(claim_name(id)) == id);
  }
  CHECK_THROWS_AS(claim_from_string("bogus"), DomainError);
}

TEST_CASE("np and Fp on the spec grid sizes") {
  CHECK(verify_claim(ClaimId::np, 10000).pass);
  CHECK(verify_claim(ClaimId::Fp, 10000).pass);
}
