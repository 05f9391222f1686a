#pragma once

// Slow reference implementations used to cross-check the primary kernels.
// Nothing here calls into specfun: the incomplete gamma comes from direct
// quadrature of its defining integral, roots come from plain bisection, and
// the mean family is evaluated in double-double arithmetic.

#include "gammatail/double_double.hpp"

#include <functional>

namespace gammatail::oracle {

/// Adaptive 20-point Gauss-Legendre quadrature with double-double
/// accumulation. Each panel is accepted when it agrees with the sum over
/// its two halves to `rel_tol` of the running total.
DD integrate(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
             double initial_width);

double oracle_gamma_q(double a, double x);
double oracle_gamma_p(double a, double x);
double oracle_log_gamma(double a);

/// p_c(a) from the quadrature path, 1 on the plateau a + c <= 0.
double oracle_tail_prob(double a, double c);

enum class RootFn { w0, wm1, x1, x2 };

/// Bisection on the monotone bracket of the selected branch.
double oracle_root(RootFn fn, double target);

struct FdResult {
  double value = 0.0;
  double error = 0.0;
};

/// Central difference (f(x+h) - f(x-h)) / (2h) with an error estimate from
/// comparison against step h/2.
FdResult fd_derivative(const std::function<double(double)>& f, double x, double h);

/// lambda(y) = (y - l^2) / ((l - 1)(y - l)), l = (y - 1)/ln y, in double-double.
DD oracle_lambda(double y);

struct MeanGaps {
  DD geo;
  DD log_mean;
  DD g_tilde;
  DD arith;
  DD l_minus_g;       // L - sqrt(xy)
  DD gt_minus_l;      // G~ - L
  DD a_minus_gt;      // (x+y)/2 - G~
};

/// Means of 0 < x < y and their consecutive gaps in double-double.
MeanGaps oracle_mean_gaps(double x, double y);

}  // namespace gammatail::oracle
