#include "gammatail/error.hpp"
#include "gammatail/oracle.hpp"
#include "gammatail/specfun.hpp"
#include "gammatail/tailprob.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gammatail;

TEST(TailProb, PlateauIsExactlyOne) {
  const tail::TailEvaluation e = tail::evaluate({0.3, -0.5});
  EXPECT_EQ(e.value, 1.0);
  EXPECT_EQ(e.error, 0.0);
  EXPECT_TRUE(e.plateau);
  EXPECT_EQ(tail::tail_prob({0.5, -0.5}), 1.0);
}

TEST(TailProb, MatchesIncompleteGamma) {
  EXPECT_EQ(tail::tail_prob({2.0, -0.5}), specfun::reg_gamma_q(2.0, 1.5));
  EXPECT_NEAR(tail::tail_prob({1.0, 0.0}), std::exp(-1.0), 2.3e-16);
}

TEST(TailProb, AgreesWithOracleWithinBound) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> la(std::log(1e-2), std::log(1e3));
  std::uniform_real_distribution<double> uc(-2.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double a = std::exp(la(rng));
    const double c = uc(rng);
    const tail::TailEvaluation e = tail::evaluate({a, c});
    EXPECT_LE(std::abs(e.value - oracle::oracle_tail_prob(a, c)), e.error + 1e-300) << a << " " << c;
  }
}

TEST(TailProb, ForwardDifferenceReference) {
  const Estimate d = tail::tail_delta(50.0, -0.2);
  EXPECT_LT(std::abs(d.value - 7.410432853908664e-5), 1e-15);
  EXPECT_LT(d.error, 5e-14);
}

TEST(TailProb, Validation) {
  EXPECT_THROW(tail::evaluate({0.0, 0.0}), DomainError);
  EXPECT_THROW(tail::evaluate({1.0, NAN}), DomainError);
  EXPECT_THROW(tail::evaluate({INFINITY, 0.0}), DomainError);
}

TEST(TailProb, DifferenceCombinesErrors) {
  const tail::TailEvaluation a = tail::evaluate({3.0, 0.1});
  const tail::TailEvaluation b = tail::evaluate({2.0, 0.1});
  const Estimate d = tail::difference(a, b);
  EXPECT_EQ(d.value, a.value - b.value);
  EXPECT_GE(d.error, a.error + b.error);
}

TEST(RatioParts, IdentityWithTail) {
  for (double a : {1.1, 3.0, 12.0}) {
    for (double c : {-0.6, 0.0, 1.5}) {
      const tail::RatioParts rp = tail::ratio_parts(a - 1.0, c);
      EXPECT_NEAR(tail::tail_prob({a, c}), 1.0 / (1.0 + rp.R), 1e-9) << a << " " << c;
      EXPECT_GT(rp.I, 0.0);
      EXPECT_GT(rp.J, 0.0);
    }
  }
}

TEST(RatioParts, Domain) {
  EXPECT_THROW(tail::ratio_parts(-1.0, 0.0), DomainError);
  EXPECT_THROW(tail::ratio_parts(0.5, -1.6), DomainError);
}

TEST(SignFunction, MatchesDirectFormula) {
  for (double z : {0.1, 0.5, 0.9}) {
    const specfun::BranchRoots r = specfun::branch_roots(z);
    for (double c : {-1.0, -0.2, 0.0, 2.0}) {
      const double direct = 1.0 - r.x1 * r.x2 + c * (1.0 - r.x1) * (r.x2 - 1.0);
      EXPECT_NEAR(tail::m_c(r, c), direct, 1e-14);
    }
  }
}

TEST(SignFunction, NegativeAtThresholdNearOne) {
  // Cancellation-prone region: the gaps are ~1e-3 and m is ~1e-12.
  const specfun::BranchRoots r = specfun::branch_roots(1.0 - 1e-6);
  EXPECT_LT(tail::m_c(r, -1.0 / 3.0), 0.0);
  EXPECT_GT(tail::m_c(r, -0.3), 0.0);
}

TEST(IntegrandRatio, LogMatchesRatio) {
  const specfun::BranchRoots r = specfun::branch_roots(0.4);
  for (double c : {-1.5, 0.0, 0.8}) {
    const double direct = std::exp(-(1.0 + c) * r.x1) * specfun::branch_root_deriv(r, 1) /
                          (-std::exp(-(1.0 + c) * r.x2) * specfun::branch_root_deriv(r, 2));
    EXPECT_NEAR(tail::integrand_ratio(r, c) / direct, 1.0, 1e-13);
    EXPECT_NEAR(std::exp(tail::log_integrand_ratio(r, c)), tail::integrand_ratio(r, c),
                1e-13 * tail::integrand_ratio(r, c));
  }
  EXPECT_THROW(tail::integrand_ratio(specfun::branch_roots(1.0 - 1e-12), 0.0, 1e-3), DegenerateError);
}

TEST(PowerFunction, IncreasingInShape) {
  double prev = 0.0;
  for (double theta = 0.1; theta < 100.0; theta *= 1.7) {
    const double p = tail::power_function(theta, 1.0);
    EXPECT_GT(p, prev);
    prev = p;
  }
  EXPECT_THROW(tail::power_function(1.0, -0.5), DomainError);
}
