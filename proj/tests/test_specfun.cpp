#include "gammatail/error.hpp"
#include "gammatail/oracle.hpp"
#include "gammatail/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gammatail;
using namespace gammatail::specfun;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST(LogGamma, ReferenceValues) {
  EXPECT_LT(rel(log_gamma(0.5), 0.5723649429247001), 1e-15);
  EXPECT_LT(std::abs(log_gamma(1.5) - -0.12078223763524522), 1e-15);
  EXPECT_LT(std::abs(log_gamma(2.5) - 0.2846828704729192), 1e-15);
  EXPECT_EQ(log_gamma(1.0), 0.0);
  EXPECT_EQ(log_gamma(2.0), 0.0);
}

TEST(LogGamma, AgreesWithOracle) {
  for (double a : {1e-3, 0.1, 0.7, 1.3, 2.2, 3.7, 9.5, 10.5, 57.0, 1234.5, 1e5}) {
    const double o = oracle::oracle_log_gamma(a);
    EXPECT_LT(std::abs(log_gamma(a) - o) / std::max(std::abs(o), 1.0), 1e-13) << a;
  }
}

TEST(LogGamma, RecurrenceHolds) {
  for (double a : {0.01, 0.3, 1.7, 8.0, 42.5, 300.25}) {
    EXPECT_NEAR(log_gamma(a + 1.0), log_gamma(a) + std::log(a),
                1e-14 * std::max(1.0, std::abs(log_gamma(a + 1.0))));
  }
}

TEST(LogGamma, RejectsNonPositive) {
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-1.0), DomainError);
  EXPECT_THROW(log_gamma(NAN), DomainError);
}

TEST(Log1pmx, SmallArgumentSeries) {
  const double t = 1e-5;
  EXPECT_LT(rel(log1pmx(t), -t * t / 2 + t * t * t / 3 - t * t * t * t / 4), 1e-15);
  EXPECT_EQ(log1pmx(0.0), 0.0);
  EXPECT_LT(rel(log1pmx(3.0), std::log(4.0) - 3.0), 1e-15);
}

TEST(IncompleteGamma, ReferenceValues) {
  EXPECT_LT(rel(reg_gamma_q(0.5, 0.25), 0.47950012218695346), 1e-14);
  EXPECT_LT(rel(reg_gamma_p(5.0, 5.0), 0.5595067149347875), 1e-14);
  EXPECT_LT(rel(reg_gamma_q(2.0, 1.5), 0.5578254003710746), 1e-14);
  EXPECT_LT(rel(reg_gamma_q(1.0, 3.0), std::exp(-3.0)), 1e-15);
}

TEST(IncompleteGamma, Endpoints) {
  EXPECT_EQ(reg_gamma_q(3.0, 0.0), 1.0);
  EXPECT_EQ(reg_gamma_p(3.0, 0.0), 0.0);
  EXPECT_EQ(reg_gamma_q_eval(3.0, 0.0).method, GammaMethod::exact);
  EXPECT_THROW(reg_gamma_q(0.0, 1.0), DomainError);
  EXPECT_THROW(reg_gamma_q(1.0, -1.0), DomainError);
}

TEST(IncompleteGamma, MethodSelection) {
  EXPECT_EQ(reg_gamma_q_eval(5.0, 2.0).method, GammaMethod::lower_series);
  EXPECT_EQ(reg_gamma_q_eval(5.0, 8.0).method, GammaMethod::continued_fraction);
  EXPECT_EQ(reg_gamma_q_eval(0.5, 0.25).method, GammaMethod::small_shape);
}

TEST(IncompleteGamma, ComplementAndErrorBound) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> la(std::log(1e-3), std::log(1e3));
  for (int i = 0; i < 300; ++i) {
    const double a = std::exp(la(rng));
    const double x = a * std::exp(std::uniform_real_distribution<double>(-2.0, 1.0)(rng));
    const IncompleteGamma q = reg_gamma_q_eval(a, x);
    const IncompleteGamma p = reg_gamma_p_eval(a, x);
    EXPECT_NEAR(p.value + q.value, 1.0, 1e-14) << a << " " << x;
    const double o = oracle::oracle_gamma_q(a, x);
    EXPECT_LE(std::abs(q.value - o), std::max(q.error, 4e-16 * o)) << a << " " << x;
  }
}

TEST(IncompleteGamma, MonotoneInX) {
  double prev = 1.0;
  for (double x = 0.05; x < 40.0; x *= 1.3) {
    const double q = reg_gamma_q(7.5, x);
    EXPECT_LT(q, prev);
    prev = q;
  }
}

TEST(LambertW, ReferenceValues) {
  EXPECT_LT(rel(lambert_wm1(-0.1), -3.577152063957297), 1e-15);
  EXPECT_EQ(lambert_w0(0.0), 0.0);
  EXPECT_LT(rel(lambert_w0(std::exp(1.0)), 1.0), 1e-15);
  EXPECT_NEAR(lambert_w0(-kInvE), -1.0, 1e-7);
  EXPECT_NEAR(lambert_wm1(-kInvE), -1.0, 1e-7);
}

TEST(LambertW, InverseProperty) {
  for (double v : {-0.36, -0.3, -0.1, -1e-5, 1e-6, 0.5, 2.0, 50.0, 1e10, 1e300}) {
    const double w = lambert_w0(v);
    EXPECT_LT(std::abs(w * std::exp(w) - v), 4e-15 * std::max(std::abs(v), 1e-300) + 1e-300)
        << v;
  }
  for (double v : {-0.3678, -0.3, -0.1, -1e-3, -1e-10, -1e-200}) {
    const double w = lambert_wm1(v);
    EXPECT_LT(rel(w + std::log(-w), std::log(-v)), 1e-14) << v;
    EXPECT_LE(w, -1.0);
  }
}

TEST(LambertW, AgreesWithOracle) {
  for (double v : {-0.35, -0.2, 0.3, 4.0, 1e5}) {
    EXPECT_LT(rel(lambert_w0(v), oracle::oracle_root(oracle::RootFn::w0, v)), 1e-14) << v;
  }
  for (double v : {-0.35, -0.2, -1e-4}) {
    EXPECT_LT(rel(lambert_wm1(v), oracle::oracle_root(oracle::RootFn::wm1, v)), 1e-14) << v;
  }
}

TEST(LambertW, DomainErrors) {
  EXPECT_THROW(lambert_w0(-0.4), DomainError);
  EXPECT_THROW(lambert_wm1(0.1), DomainError);
  EXPECT_THROW(lambert_wm1(0.0), DomainError);
}

TEST(BranchRoots, ReferenceValues) {
  const BranchRoots r = branch_roots(2.0 / std::exp(1.0));
  EXPECT_LT(rel(r.x1, 0.40637573995996), 1e-13);
  EXPECT_LT(rel(r.x2, 2.0), 1e-15);
  EXPECT_LT(rel(branch_root_deriv(r, 1), 0.9304233871651816), 1e-14);
}

TEST(BranchRoots, SolveTheMap) {
  for (int i = 1; i < 2000; ++i) {
    const double z = i / 2000.0;
    const BranchRoots r = branch_roots(z);
    ASSERT_LT(r.x1, 1.0);
    ASSERT_GT(r.x2, 1.0);
    EXPECT_LT(rel(std::log(r.x1) + 1.0 - r.x1, std::log(z)), 1e-13) << z;
    EXPECT_LT(rel(std::log(r.x2) + 1.0 - r.x2, std::log(z)), 1e-13) << z;
    EXPECT_NEAR(r.gap1, 1.0 - r.x1, 2.3e-16);
  }
}

TEST(BranchRoots, GapsAccurateNearOne) {
  for (double d : {1e-4, 1e-7, 1e-10}) {
    const double z = 1.0 - d;
    const BranchRoots r = branch_roots(z);
    const double o1 = 1.0 - oracle::oracle_root(oracle::RootFn::x1, z);
    const double o2 = oracle::oracle_root(oracle::RootFn::x2, z) - 1.0;
    // The oracle brackets x itself, so its gaps carry absolute error ~ u.
    EXPECT_NEAR(r.gap1, o1, 4e-16);
    EXPECT_NEAR(r.gap2, o2, 4e-16);
    EXPECT_NEAR(r.gap1, std::sqrt(2.0 * d), 2.0 * d);
  }
}

TEST(BranchRoots, DerivativeMatchesFiniteDifference) {
  for (double z : {0.05, 0.3, 0.7, 0.95}) {
    const BranchRoots r = branch_roots(z);
    for (int which : {1, 2}) {
      const auto f = [which](double t) {
        const BranchRoots b = branch_roots(t);
        return which == 1 ? b.x1 : b.x2;
      };
      const oracle::FdResult fd = oracle::fd_derivative(f, z, 1e-4 * z);
      EXPECT_NEAR(branch_root_deriv(r, which), fd.value, 10.0 * fd.error + 1e-9) << z;
    }
  }
}

TEST(BranchRoots, Domain) {
  EXPECT_THROW(branch_roots(0.0), DomainError);
  EXPECT_THROW(branch_roots(1.0), DomainError);
  EXPECT_THROW(branch_root_deriv(branch_roots(1.0 - 1e-12), 1, 1e-3), DegenerateError);
}

TEST(Means, ReferenceValues) {
  EXPECT_LT(rel(g_tilde(1.0, 4.0), 2.1708011270346414), 1e-15);
  EXPECT_LT(rel(log_mean(1.0, 4.0), 2.1640425613334453), 1e-15);
  EXPECT_EQ(log_mean(3.0, 3.0), 3.0);
  EXPECT_LT(rel(lambda_fn(std::exp(1.0)), -0.3260706372817124), 1e-14);
  EXPECT_LT(rel(lambda_fn(1e12), -0.0375501936), 1e-9);
  EXPECT_LT(rel(lambda_fn(1e6), -0.0780165458), 1e-9);
}

TEST(Means, LambdaAgreesWithOracle) {
  for (double y : {1.0 + 1e-6, 1.001, 1.5, 2.0, 10.0, 1e4, 1e9}) {
    const double o = oracle::oracle_lambda(y).hi;
    EXPECT_LT(rel(lambda_fn(y), o), 1e-13) << y;
  }
}

TEST(Means, ShiftedLambdaNearOne) {
  for (double u : {1e-3, 1e-2, 0.1}) {
    const double y = std::exp(u);
    EXPECT_LT(rel(lambda_shifted(y), u * u / 135.0), 2.0 * u * u) << u;
    EXPECT_GT(lambda_shifted(y), 0.0);
  }
}

TEST(Means, SeriesAndClosedFormsMeet) {
  const double lim = detail::kLogMeanSeriesLimit;
  const auto below = detail::log_mean_parts(std::nextafter(lim, 0.0), std::exp(std::nextafter(lim, 0.0)));
  const auto above = detail::log_mean_parts(std::nextafter(lim, 2.0), std::exp(std::nextafter(lim, 2.0)));
  EXPECT_LT(rel(below.shifted, above.shifted), 1e-13);
  EXPECT_LT(rel(below.n, above.n), 1e-13);
}

TEST(Means, OrderingProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-6.0, 6.0);
  for (int i = 0; i < 500; ++i) {
    double x = std::exp(d(rng));
    double y = std::exp(d(rng));
    if (x > y) std::swap(x, y);
    if (x == y) continue;
    const double l = log_mean(x, y);
    const double g = g_tilde(x, y);
    EXPECT_LT(std::sqrt(x * y), l);
    EXPECT_LT(l, g);
    EXPECT_LT(g, 0.5 * (x + y));
    EXPECT_LT(lambda_fn(y / x), 0.0);
    EXPECT_GT(lambda_fn(y / x), -1.0 / 3.0);
  }
}
