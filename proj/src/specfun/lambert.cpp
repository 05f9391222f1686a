#include "gammatail/error.hpp"
#include "gammatail/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace gammatail::specfun {
namespace {

// W at the branch point as a series in p = sqrt(2 (e v + 1)); the lower
// branch uses -p.
constexpr std::array<double, 10> kBranchSeries = {
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680863.0 / 43545600.0,
    -1963.0 / 204120.0,
    226287557.0 / 37623398400.0,
};

constexpr double kBranchSlack = 1e-14;
constexpr double kDirectSeriesLimit = 2.33e-3;
constexpr double kSeedSeriesLimit = 0.6;
constexpr int kMaxIter = 64;

double branch_series(double p) {
  double acc = 0.0;
  for (std::size_t i = kBranchSeries.size(); i-- > 0;) acc = acc * p + kBranchSeries[i];
  return acc;
}

// e v + 1 with e carried in two parts so that v near -1/e keeps its digits.
double branch_distance(double v) { return std::fma(kE, v, 1.0) + kELow * v; }

double halley(double w, double v) {
  for (int i = 0; i < kMaxIter; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - v;
    const double wp1 = w + 1.0;
    const double dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= dw;
    if (std::abs(dw) <= 4.0 * kUnitRoundoff * std::abs(w)) return w;
  }
  throw ConvergenceError("lambert_w: Halley iteration did not converge", std::abs(w));
}

// Newton on w + ln|w| = ln|v|, used where w e^w would under- or overflow.
double log_newton(double w, double log_abs_v) {
  for (int i = 0; i < kMaxIter; ++i) {
    const double g = w + std::log(std::abs(w)) - log_abs_v;
    const double dw = g / (1.0 + 1.0 / w);
    w -= dw;
    if (std::abs(dw) <= 4.0 * kUnitRoundoff * std::abs(w)) return w;
  }
  throw ConvergenceError("lambert_w: log-form Newton did not converge", std::abs(w));
}

double branch_p(double v, const char* op) {
  double d = branch_distance(v);
  if (d < -kBranchSlack || std::isnan(d)) {
    throw DomainError(std::string(op) + ": argument below -1/e");
  }
  if (d < 0.0) d = 0.0;
  return std::sqrt(2.0 * d);
}

}  // namespace

double lambert_w0(double v) {
  if (!std::isfinite(v)) throw DomainError("lambert_w0: argument must be finite");
  if (v == 0.0) return 0.0;
  const double p = branch_p(v, "lambert_w0");
  if (p < kDirectSeriesLimit) return branch_series(p);
  if (p < kSeedSeriesLimit) return halley(branch_series(p), v);
  if (v <= kE) {
    const double l = std::log1p(v);
    return halley(l * (1.0 - std::log1p(l) / (2.0 + l)), v);
  }
  const double l1 = std::log(v);
  const double l2 = std::log(l1);
  return log_newton(l1 - l2 + l2 / l1, l1);
}

double lambert_wm1(double v) {
  if (!std::isfinite(v) || v >= 0.0) {
    throw DomainError("lambert_wm1: argument must lie in [-1/e, 0)");
  }
  const double p = branch_p(v, "lambert_wm1");
  if (p < kDirectSeriesLimit) return branch_series(-p);
  if (p < kSeedSeriesLimit) return halley(branch_series(-p), v);
  const double l1 = std::log(-v);
  const double l2 = std::log(-l1);
  return log_newton(l1 - l2 + l2 / l1, l1);
}

double f_map(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("f_map: argument must be finite and non-negative");
  }
  return x * std::exp(1.0 - x);
}

namespace {

// Solve log1pmx(t) = lz, the t-form of x e^{1-x} = z with x = 1 + t.
double solve_t(double t, double lz) {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kMaxIter; ++i) {
    const double h = log1pmx(t) - lz;
    const double d1 = -t / (1.0 + t);
    const double d2 = -1.0 / ((1.0 + t) * (1.0 + t));
    const double dt = h / (d1 - 0.5 * h * d2 / d1);
    double next = t - dt;
    if (next <= -1.0) next = 0.5 * (t - 1.0);
    const double step = std::abs(next - t);
    t = next;
    if (step <= 4.0 * kUnitRoundoff * std::abs(t)) return t;
    // Steps no longer shrinking: the residual is at rounding level.
    if (i > 2 && step >= prev && step <= 64.0 * kUnitRoundoff * std::abs(t)) return t;
    prev = step;
  }
  throw ConvergenceError("branch_roots: iteration did not converge", std::abs(t));
}

// Solve ln x + 1 - x = lz on (0, 1).
double solve_lower_x(double x, double lz) {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kMaxIter; ++i) {
    const double g = std::log(x) + 1.0 - x - lz;
    const double dx = g / (1.0 / x - 1.0);
    double next = x - dx;
    if (next <= 0.0) next = 0.5 * x;
    const double step = std::abs(next - x);
    x = next;
    if (step <= 4.0 * kUnitRoundoff * x) return x;
    if (i > 2 && step >= prev && step <= 64.0 * kUnitRoundoff * (1.0 + std::abs(lz)) * x) return x;
    prev = step;
  }
  throw ConvergenceError("branch_roots: iteration did not converge", x);
}

// Inverse of log1pmx near 0: t(s) with log1pmx(t) = -s^2/2.
double double_root_seed(double s) {
  constexpr std::array<double, 8> kCoef = {
      0.0, 1.0, 1.0 / 3.0, 1.0 / 36.0, -1.0 / 270.0, 1.0 / 4320.0, 1.0 / 17010.0,
      -139.0 / 5443200.0,
  };
  double acc = 0.0;
  for (std::size_t i = kCoef.size(); i-- > 0;) acc = acc * s + kCoef[i];
  return acc;
}

}  // namespace

BranchRoots branch_roots(double z) {
  if (!(z >= kBranchZMin && z <= kBranchZMax)) {
    throw DomainError("branch_roots: z outside [1e-300, 1 - 1e-12]");
  }
  const double lz = std::log(z);
  const double s = std::sqrt(-2.0 * lz);

  BranchRoots r;
  r.z = z;

  double t2;
  if (s < 1.5) {
    t2 = double_root_seed(s);
  } else {
    double x = 1.0 - lz;
    for (int i = 0; i < 4; ++i) x = 1.0 - lz + std::log(x);
    t2 = x - 1.0;
  }
  t2 = solve_t(t2, lz);
  r.gap2 = t2;
  r.x2 = 1.0 + t2;

  if (s < 0.62) {
    const double t1 = solve_t(double_root_seed(-s), lz);
    r.gap1 = -t1;
    r.x1 = 1.0 + t1;
  } else {
    double x = std::exp(lz - 1.0);
    for (int i = 0; i < 4; ++i) x = std::exp(lz - 1.0 + x);
    x = solve_lower_x(x, lz);
    r.x1 = x;
    r.gap1 = 1.0 - x;
  }
  return r;
}

double branch_root_deriv(const BranchRoots& roots, int which, double abs_tol) {
  if (which != 1 && which != 2) throw DomainError("branch_root_deriv: which must be 1 or 2");
  const double one_minus = which == 1 ? roots.gap1 : -roots.gap2;
  const double x = which == 1 ? roots.x1 : roots.x2;
  if (std::abs(one_minus) < abs_tol) {
    throw DegenerateError("branch_root_deriv: root too close to 1");
  }
  return x / (one_minus * roots.z);
}

}  // namespace gammatail::specfun
