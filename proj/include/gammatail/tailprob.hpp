#pragma once

// The centred gamma tail p_c(a) = P(X_a - a > c) = Q(a, a + c) and the
// companion quantities used to study its monotonicity in a.

#include "gammatail/numeric.hpp"
#include "gammatail/specfun.hpp"

namespace gammatail::tail {

struct TailQuery {
  double a = 1.0;
  double c = 0.0;

  /// Throws DomainError unless a > 0 and both fields are finite.
  void validate() const;
};

struct TailEvaluation {
  double value = 0.0;
  /// Absolute error bound, including the rounding of a + c.
  double error = 0.0;
  specfun::GammaMethod method = specfun::GammaMethod::exact;
  /// True when a + c <= 0 and the probability is exactly 1.
  bool plateau = false;
};

TailEvaluation evaluate(const TailQuery& q);

/// p_c(a); exactly 1 when a + c <= 0.
double tail_prob(const TailQuery& q);

/// p_c(a + 1) - p_c(a) with an absolute error bound.
Estimate tail_delta(double a, double c);

/// Difference of two evaluations with a combined error bound.
Estimate difference(const TailEvaluation& hi, const TailEvaluation& lo);

struct RatioParts {
  double u = 0.0;
  double c = 0.0;
  double I = 0.0;
  double J = 0.0;
  double R = 0.0;
  double I_error = 0.0;
  double J_error = 0.0;
};

/// I(u) = int_0^1 f(x)^u e^{-(1+c)x} dx and J(u) = int_1^inf of the same
/// integrand, with f(x) = x e^{1-x}. Requires u > -1 and u + c > -1.
RatioParts ratio_parts(double u, double c);

/// 1 - x1 x2 + c (1 - x1)(x2 - 1), evaluated from the root gaps.
double m_c(const specfun::BranchRoots& roots, double c);

/// r = p / q where p = e^{-(1+c) x1} x1' and q = -e^{-(1+c) x2} x2'.
double integrand_ratio(const specfun::BranchRoots& roots, double c, double abs_tol = 1e-14);

/// ln r, finite wherever r is; preferred for finite differences.
double log_integrand_ratio(const specfun::BranchRoots& roots, double c,
                           double abs_tol = 1e-14);

/// Power of the test rejecting when X - theta > c, at true shape theta.
/// Requires theta > 0 and c > 0.
double power_function(double theta, double c);

}  // namespace gammatail::tail
