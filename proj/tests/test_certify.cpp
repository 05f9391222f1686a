#include "gammatail/certify.hpp"
#include "gammatail/error.hpp"
#include "gammatail/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gammatail;
using certify::Direction;

TEST(ScanSpec, GridEndpointsAndValidation) {
  const certify::ScanSpec s{0.5, 8.0, 5, certify::Scale::log};
  const auto g = s.grid();
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), 0.5);
  EXPECT_EQ(g.back(), 8.0);
  EXPECT_NEAR(g[2], 2.0, 1e-15);
  EXPECT_THROW((certify::ScanSpec{0.0, 1.0, 10}.grid()), DomainError);
  EXPECT_THROW((certify::ScanSpec{2.0, 1.0, 10}.grid()), DomainError);
  EXPECT_THROW((certify::ScanSpec{1.0, 2.0, 2}.grid()), DomainError);
}

TEST(Monotone, PositiveOffsetIncreasing) {
  const auto v = certify::certify_monotone(0.5, {0.01, 200.0, 200}, Precision{});
  EXPECT_EQ(v.direction, Direction::increasing);
  EXPECT_GE(v.margin_ratio, 8.0);
  EXPECT_EQ(v.decreasing_steps, 0);
}

TEST(Monotone, LargeNegativeOffsetDecreasing) {
  const auto v = certify::certify_monotone(-0.75, {0.76, 200.0, 200}, Precision{});
  EXPECT_EQ(v.direction, Direction::decreasing);
}

TEST(Monotone, PlateauPointsExcluded) {
  const auto v = certify::certify_monotone(-1.0, {0.1, 50.0, 100}, Precision{});
  EXPECT_GT(v.plateau_points, 0);
  EXPECT_EQ(v.direction, Direction::decreasing);
}

TEST(Monotone, IntermediateOffsetNonMonotone) {
  const auto v = certify::certify_monotone(-0.2, {0.21, 500.0, 600}, Precision{});
  ASSERT_EQ(v.direction, Direction::non_monotone);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_GT(v.witness->p1, v.witness->p2);
  EXPECT_GT(v.witness->p3, v.witness->p2);
  EXPECT_NEAR(v.witness->p2, 0.4386, 5e-4);
}

TEST(Monotone, HugeMarginIsInconclusive) {
  Precision p;
  p.strict_margin = 1e30;
  const auto v = certify::certify_monotone(0.0, {1.0, 2.0, 10}, p);
  EXPECT_EQ(v.direction, Direction::inconclusive);
  ASSERT_TRUE(v.offending.has_value());
  EXPECT_EQ(v.offending->lo, 1.0);
}

TEST(Monotone, ThreadCountDoesNotChangeVerdict) {
  const auto a = certify::certify_monotone(-0.1, {0.11, 50.0, 300}, Precision{}, 1);
  const auto b = certify::certify_monotone(-0.1, {0.11, 50.0, 300}, Precision{}, 6);
  EXPECT_EQ(a.direction, b.direction);
  EXPECT_EQ(a.margin_ratio, b.margin_ratio);
  EXPECT_EQ(a.increasing_steps, b.increasing_steps);
}

TEST(Witness, MinimaOfTheCentredTail) {
  struct Case {
    double c, p_min, a_min;
  };
  for (const Case k : {Case{-0.05, 0.212, 0.07}, Case{-0.1, 0.320, 0.16}, Case{-0.2, 0.4386, 0.5},
                       Case{-0.3, 0.4932, 2.0}, Case{-0.33, 0.49979, 17.8}}) {
    const certify::Witness w = certify::find_witness(k.c, Precision{});
    EXPECT_NEAR(w.p2, k.p_min, 1e-3) << k.c;
    EXPECT_NEAR(w.a2 / k.a_min, 1.0, 0.1) << k.c;
    EXPECT_GT(w.margin_ratio(), 8.0);
    EXPECT_GT(oracle::oracle_tail_prob(w.a1, k.c), oracle::oracle_tail_prob(w.a2, k.c));
    EXPECT_GT(oracle::oracle_tail_prob(w.a3, k.c), oracle::oracle_tail_prob(w.a2, k.c));
  }
}

TEST(Witness, BudgetAndDomain) {
  EXPECT_THROW(certify::find_witness(-0.3333333, Precision{}, 1e3), CertificationError);
  EXPECT_THROW(certify::find_witness(0.1, Precision{}), DomainError);
  EXPECT_THROW(certify::find_witness(-0.5, Precision{}), DomainError);
}

TEST(ThresholdChain, StagesAgreeWithDirectForms) {
  for (double y : {1.5, 3.0, 20.0, 1e4}) {
    for (auto s : {certify::Stage::lambda, certify::Stage::f1_g1, certify::Stage::f2_g2,
                   certify::Stage::r3}) {
      EXPECT_NEAR(certify::stage_shifted(s, y) - 1.0 / 3.0, certify::stage_direct(s, y), 1e-12);
    }
  }
}

TEST(ThresholdChain, ShiftedStagesPositive) {
  for (double y : {1.0 + 1e-9, 1.01, 2.0, 50.0, 1e8}) {
    for (auto s : {certify::Stage::lambda, certify::Stage::f1_g1, certify::Stage::f2_g2,
                   certify::Stage::r3}) {
      EXPECT_GT(certify::stage_shifted(s, y), 0.0) << y;
      EXPECT_LT(certify::stage_shifted(s, y), 1.0 / 3.0) << y;
    }
  }
  EXPECT_GT(certify::r3_derivative(2.0), 0.0);
}

TEST(ThresholdChain, FullReport) {
  std::vector<double> ys;
  for (int i = 0; i < 100; ++i) ys.push_back(1.0 + std::pow(10.0, -5.0 + 0.1 * i));
  const auto rep = certify::check_threshold_chain(ys, Precision{});
  EXPECT_TRUE(rep.ok);
  ASSERT_EQ(rep.stages.size(), 4u);
  for (const auto& s : rep.stages) {
    EXPECT_TRUE(s.increasing);
    EXPECT_NEAR(s.limit_value, -1.0 / 3.0, 1e-6);
  }
  EXPECT_THROW(certify::check_threshold_chain({1.0}, Precision{}), DomainError);
}

TEST(MeanChain, GapsAgreeWithOracle) {
  for (auto [x, y] : {std::pair{1.0, 4.0}, std::pair{1e-3, 1e3}, std::pair{2.0, 2.5}}) {
    const certify::MeanGaps m = certify::mean_gaps(x, y);
    const oracle::MeanGaps o = oracle::oracle_mean_gaps(x, y);
    EXPECT_NEAR(m.l_minus_g / o.l_minus_g.hi, 1.0, 1e-12) << x << " " << y;
    EXPECT_NEAR(m.gt_minus_l / o.gt_minus_l.hi, 1.0, 1e-12) << x << " " << y;
    EXPECT_NEAR(m.a_minus_gt / o.a_minus_gt.hi, 1.0, 1e-12) << x << " " << y;
  }
}

TEST(MeanChain, NearDiagonalGaps) {
  // Double-double cannot resolve G~ - L ~ u^4 here; reference values from
  // 60-digit arithmetic.
  EXPECT_NEAR(certify::mean_gaps(1.0, 1.0 + 1e-6).gt_minus_l / 9.2592453673392263e-28, 1.0, 1e-13);
  EXPECT_NEAR(certify::mean_gaps(5.0, 5.001).gt_minus_l / 7.4051856895002117e-18, 1.0, 1e-13);
}

TEST(MeanChain, ProbeFindsViolationOnlyBelowThird) {
  EXPECT_GT(certify::probe_gap(1.0, 1.01, 0.332), 0.0);
  for (double t : {1.001, 1.5, 10.0, 1e5}) EXPECT_LT(certify::probe_gap(1.0, t, 1.0 / 3.0), 0.0);
  const auto rep = certify::check_mean_chain({{1.0, 2.0}, {0.5, 9.0}}, Precision{});
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.probe_violation_found);
  EXPECT_THROW(certify::mean_gaps(2.0, 2.0), DomainError);
}

TEST(Asymptotic, FrozenIntegrals) {
  const auto rep = certify::check_asymptotic(-0.2, {0.02, 0.01, 0.005, 0.0025}, Precision{});
  const double want[] = {0.0026907774518150, 0.0013393472915211, 0.00066816841809431,
                         0.00033370855267084};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(rep.integral[i] / want[i], 1.0, 1e-12);
  EXPECT_TRUE(rep.ok);
  EXPECT_LT(rep.slope_rel_error, 0.02);
  EXPECT_LT(rep.identity_max_rel_error, 1e-7);
}

TEST(Asymptotic, IntegrandSmallEpsilonLimit) {
  EXPECT_GT(certify::asymptotic_integrand(1e-3, 0.5, 0.8), 0.0);
  EXPECT_THROW(certify::check_asymptotic(0.1, {0.02, 0.01, 0.005}, Precision{}), DomainError);
}
