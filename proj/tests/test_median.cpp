#include "gammatail/median.hpp"
#include "gammatail/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gammatail;

TEST(Median, ExponentialCase) {
  const median::MedianResult r = median::gamma_median(1.0, Precision{});
  EXPECT_NEAR(r.median, std::log(2.0), 1e-15);
  EXPECT_NEAR(r.offset, std::log(2.0) - 1.0, 1e-14);
  EXPECT_TRUE(r.offset_certified);
}

TEST(Median, ReferenceValue) {
  EXPECT_NEAR(median::gamma_median(2.0, Precision{}).median, 1.6783469900166607, 1e-15);
}

TEST(Median, OffsetBracketAndApproximation) {
  for (double a = 0.01; a < 1e5; a *= 1.9) {
    const median::MedianResult r = median::gamma_median(a, Precision{});
    EXPECT_GT(r.offset, -1.0 / 3.0) << a;
    EXPECT_LT(r.offset, 0.0) << a;
    EXPECT_LE(r.residual, 1e-12) << a;
    EXPECT_TRUE(r.offset_certified) << a;
    if (a > 50.0) {
      EXPECT_NEAR(r.offset, -1.0 / 3.0 + 8.0 / (405.0 * a), 1e-4 / a);
    }
  }
}

TEST(Median, TinyShape) {
  const median::MedianResult r = median::gamma_median(1e-3, Precision{});
  EXPECT_GT(r.median, 0.0);
  EXPECT_NEAR(specfun::reg_gamma_q(1e-3, r.median), 0.5, 1e-12);
}

TEST(Median, Domain) {
  EXPECT_THROW(median::gamma_median(0.0, Precision{}), DomainError);
  EXPECT_THROW(median::gamma_median(-2.0, Precision{}), DomainError);
}

TEST(Median, BracketProbabilities) {
  const auto rep = median::bracket_check({0.01, 0.5, 3.0, 100.0, 1e4}, Precision{});
  EXPECT_TRUE(rep.ok);
  for (const auto& row : rep.rows) {
    EXPECT_LT(row.p_zero, 0.5);
    EXPECT_GT(row.p_third, 0.5);
  }
}
