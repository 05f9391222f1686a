#pragma once

// Double-precision special-function kernels: log-gamma, the regularized
// incomplete gamma pair, both real Lambert W branches, the map
// f(x) = x e^{1-x} with its two inverse branches, and the logarithmic-mean
// family (L, l, lambda, G-tilde).
//
// Every function here is pure and reentrant.

#include "gammatail/numeric.hpp"

#include <string_view>

namespace gammatail::specfun {

// ---------------------------------------------------------------------------
// Gamma family
// ---------------------------------------------------------------------------

/// ln Gamma(a) for a > 0.
double log_gamma(double a);

/// ln Gamma(1 + a) for a > -1, accurate near a = 0 and a = 1.
double log_gamma_1p(double a);

/// ln(1 + t) - t for t > -1, without cancellation near t = 0.
double log1pmx(double t);

enum class GammaMethod {
  exact,               // x == 0 or a closed-form endpoint
  lower_series,        // power series for P, x < a + 1
  continued_fraction,  // Lentz continued fraction for Q, x >= a + 1
  small_shape,         // direct Q for a < 1, x < a + 1
};

std::string_view to_string(GammaMethod m);

/// Result of an incomplete-gamma evaluation with its error estimate.
struct IncompleteGamma {
  double value = 0.0;
  double error = 0.0;
  GammaMethod method = GammaMethod::exact;
  int iterations = 0;
  /// ln(x^a e^{-x} / Gamma(a)); -inf when x == 0.
  double log_prefactor = 0.0;
};

/// Q(a, x) = Gamma(a, x) / Gamma(a).
double reg_gamma_q(double a, double x);
/// P(a, x) = gamma(a, x) / Gamma(a).
double reg_gamma_p(double a, double x);

IncompleteGamma reg_gamma_q_eval(double a, double x);
IncompleteGamma reg_gamma_p_eval(double a, double x);

// ---------------------------------------------------------------------------
// Lambert W and the branches of f(x) = x e^{1-x}
// ---------------------------------------------------------------------------

/// Principal branch W0 on [-1/e, inf).
double lambert_w0(double v);
/// Lower branch W_{-1} on [-1/e, 0).
double lambert_wm1(double v);

/// f(x) = x e^{1-x}.
double f_map(double x);

/// Supported interval for `branch_roots`.
inline constexpr double kBranchZMin = 1e-300;
inline constexpr double kBranchZMax = 1.0 - 1e-12;

/// The two solutions of f(x) = z for z in (0, 1).
///
/// `gap1 = 1 - x1` and `gap2 = x2 - 1` are carried separately because they
/// are computed to full relative accuracy even when z is close to 1, where
/// x1 and x2 both approach 1.
struct BranchRoots {
  double z = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double gap1 = 0.0;
  double gap2 = 0.0;
};

BranchRoots branch_roots(double z);

/// x_j'(z) = x_j / ((1 - x_j) z), `which` in {1, 2}.
double branch_root_deriv(const BranchRoots& roots, int which, double abs_tol = 1e-14);

// ---------------------------------------------------------------------------
// Means
// ---------------------------------------------------------------------------

/// Logarithmic mean L(x, y) = (y - x) / (ln y - ln x), with L(x, x) = x.
double log_mean(double x, double y);

/// lambda(y) = (y - l^2) / ((l - 1)(y - l)), l = L(1, y), for y > 1.
double lambda_fn(double y);

/// lambda(y) + 1/3, evaluated without cancellation near y = 1.
double lambda_shifted(double y);

/// G~(x, y) = sqrt(xy + (L - x)(y - L) / 3).
double g_tilde(double x, double y);

namespace detail {

/// Series-or-closed-form pieces of the logarithmic-mean family at u = ln y.
///
///   a1      = (y - 1 - u) / u^2
///   b1      = (u y - y + 1) / u^2
///   lambda  = lambda(y)
///   shifted = lambda(y) + 1/3
///   n       = a1 * b1 * shifted
struct LogMeanParts {
  double a1 = 0.0;
  double b1 = 0.0;
  double lambda = 0.0;
  double shifted = 0.0;
  double n = 0.0;
};

/// `u` must be > 0. `y` is e^u; callers pass it to avoid an extra exp when
/// u is outside the series range.
LogMeanParts log_mean_parts(double u, double y);

/// Above this u the pieces switch from power series to closed forms.
inline constexpr double kLogMeanSeriesLimit = 1.0;

/// sinh(v) - v.
double sinh_minus_id(double v);
/// v cosh(v) - sinh(v).
double id_cosh_minus_sinh(double v);

}  // namespace detail

}  // namespace gammatail::specfun
