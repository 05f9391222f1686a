#include "gammatail/error.hpp"
#include "gammatail/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace gammatail::specfun {
namespace {

// zeta(k) - 1 for k = 2, 3, ..., 41.
constexpr std::array<double, 40> kZetaMinusOne = {
    0.64493406684822644,     0.20205690315959429,     0.082323233711138192,
    0.036927755143369926,    0.01734306198444914,     0.0083492773819228268,
    0.0040773561979443394,   0.0020083928260822144,   0.00099457512781808534,
    0.00049418860411946456,  0.0002460865533080483,   0.00012271334757848915,
    6.1248135058704829e-5,   3.0588236307020494e-5,   1.5282259408651872e-5,
    7.6371976378997623e-6,   3.8172932649998399e-6,   1.9082127165539389e-6,
    9.5396203387279611e-7,   4.7693298678780646e-7,   2.3845050272773299e-7,
    1.1921992596531107e-7,   5.960818905125948e-8,    2.980350351465228e-8,
    1.4901554828365041e-8,   7.4507117898354295e-9,   3.7253340247884571e-9,
    1.862659723513049e-9,    9.3132743241966818e-10,  4.6566290650337841e-10,
    2.3283118336765055e-10,  1.164155017270052e-10,   5.8207720879027009e-11,
    2.9103850444970997e-11,  1.4551921891041984e-11,  7.275959835057481e-12,
    3.6379795473786512e-12,  1.8189896503070659e-12,  9.0949478402638893e-13,
    4.547473783042154e-13,
};

// sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k for |z| <= 1/2.
double zeta_tail(double z) {
  double acc = 0.0;
  for (std::size_t i = kZetaMinusOne.size(); i-- > 0;) {
    const int k = static_cast<int>(i) + 2;
    const double coef = (k % 2 == 0 ? 1.0 : -1.0) * kZetaMinusOne[i] / k;
    acc = acc * z + coef;
  }
  return acc * z * z;
}

// ln Gamma(2 + z) for |z| <= 1/2.
double log_gamma_2pz(double z) { return z * (1.0 - kEulerGamma) + zeta_tail(z); }

// ln Gamma(a) - [(a - 1/2) ln a - a + ln sqrt(2 pi)], a >= 10.
double stirling_correction(double a) {
  static constexpr std::array<double, 8> kCoef = {
      1.0 / 12.0,     -1.0 / 360.0,         1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0,   -691.0 / 360360.0,    1.0 / 156.0,  -3617.0 / 122400.0,
  };
  const double inv = 1.0 / a;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (std::size_t i = kCoef.size(); i-- > 0;) {
    acc = acc * inv2 + kCoef[i];
  }
  return acc * inv;
}

constexpr double kStirlingThreshold = 10.0;

void require_shape(double a, const char* op) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError(std::string(op) + ": shape parameter must be positive and finite");
  }
}

void require_abscissa(double x, const char* op) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(op) + ": x must be non-negative and finite");
  }
}

int iteration_budget(double a) { return 2000 + static_cast<int>(40.0 * std::sqrt(a)); }

// ln(x^a e^{-x} / Gamma(a)) and an estimate of its absolute error. For large a
// the Stirling form keeps the large terms a ln x, x and ln Gamma(a) from
// cancelling in floating point.
Estimate log_prefactor(double a, double x) {
  const double u = kUnitRoundoff;
  if (a >= kStirlingThreshold) {
    const double t = (x - a) / a;
    const double main = a * log1pmx(t);
    const double value = main + 0.5 * std::log(a) - kLnSqrt2Pi - stirling_correction(a);
    const double err = u * (4.0 * std::abs(main) + 2.0 * a * t * t / (1.0 + t) +
                            2.0 * std::abs(std::log(a)) + 4.0);
    return {value, err};
  }
  const double alx = a * std::log(x);
  const double lg = log_gamma(a);
  return {alx - x - lg, u * (2.0 * std::abs(alx) + std::abs(x) + 2.0 * std::abs(lg) + 4.0)};
}

IncompleteGamma lower_series(double a, double x) {
  const Estimate lp = log_prefactor(a, x);
  const int budget = iteration_budget(a);
  double sum = 1.0;
  double term = 1.0;
  int n = 1;
  for (; n <= budget; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term <= kUnitRoundoff * sum) break;
  }
  if (n > budget) {
    throw ConvergenceError("reg_gamma: lower series did not converge", term / sum);
  }
  const double value = std::exp(lp.value + std::log(sum / a));
  const double rel = lp.error + kUnitRoundoff * (n + 4.0);
  return {value, value * rel, GammaMethod::lower_series, n, lp.value};
}

IncompleteGamma upper_continued_fraction(double a, double x) {
  constexpr double kTiny = std::numeric_limits<double>::min() / kUnitRoundoff;
  const Estimate lp = log_prefactor(a, x);
  const int budget = iteration_budget(a);
  const double b0 = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b0;
  double h = d;
  double delta = 0.0;
  int i = 1;
  for (; i <= budget; ++i) {
    const double an = -i * (i - a);
    const double b = b0 + 2.0 * i;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <= 2.0 * kUnitRoundoff) break;
  }
  if (i > budget) {
    throw ConvergenceError("reg_gamma: continued fraction did not converge",
                           std::abs(delta - 1.0));
  }
  const double value = std::exp(lp.value + std::log(h));
  const double rel = lp.error + kUnitRoundoff * (2.0 * i + 4.0);
  return {value, value * rel, GammaMethod::continued_fraction, i, lp.value};
}

// Q(a, x) for a < 1 and x < a + 1:
//   Q = 1 - x^a/Gamma(a+1) - x^a/Gamma(a+1) * a * sum_{n>=1} (-x)^n / (n! (a+n)).
IncompleteGamma small_shape_upper(double a, double x) {
  const double y = a * std::log(x) - log_gamma_1p(a);
  const double head = -std::expm1(y);
  const double scale = std::exp(y);
  double term = 1.0;
  double sum = 0.0;
  int n = 1;
  for (; n <= 200; ++n) {
    term *= -x / n;
    const double add = term / (a + n);
    sum += add;
    if (std::abs(add) <= kUnitRoundoff * std::abs(sum)) break;
  }
  const double tail = scale * a * sum;
  const double value = head - tail;
  const double y_err = kUnitRoundoff * (std::abs(y) + 2.0);
  const double err = kUnitRoundoff * (4.0 * std::abs(head) + (n + 4.0) * std::abs(tail)) +
                     scale * y_err * (1.0 + std::abs(a * sum));
  return {value, err, GammaMethod::small_shape, n, y + std::log(a) - x};
}

}  // namespace

std::string_view to_string(GammaMethod m) {
  switch (m) {
    case GammaMethod::exact: return "exact";
    case GammaMethod::lower_series: return "lower_series";
    case GammaMethod::continued_fraction: return "continued_fraction";
    case GammaMethod::small_shape: return "small_shape";
  }
  return "unknown";
}

double log1pmx(double t) {
  if (!(t > -1.0) || !std::isfinite(t)) {
    throw DomainError("log1pmx: argument must be finite and > -1");
  }
  if (std::abs(t) < 0.5) {
    // ln(1+t) = 2 atanh(w), w = t/(2+t); 2w - t = -t^2/(2+t).
    const double w = t / (2.0 + t);
    const double w2 = w * w;
    double power = w * w2;
    double sum = 0.0;
    for (int k = 1; k < 64; ++k) {
      const double add = power / (2 * k + 1);
      sum += add;
      if (std::abs(add) <= kUnitRoundoff * std::abs(sum)) break;
      power *= w2;
    }
    return -t * t / (2.0 + t) + 2.0 * sum;
  }
  return std::log1p(t) - t;
}

double log_gamma_1p(double a) {
  if (!(a > -1.0) || !std::isfinite(a)) {
    throw DomainError("log_gamma_1p: argument must be finite and > -1");
  }
  if (std::abs(a) <= 0.5) {
    return -std::log1p(a) + a * (1.0 - kEulerGamma) + zeta_tail(a);
  }
  if (a > 0.5 && a <= 1.5) {
    return log_gamma_2pz(a - 1.0);
  }
  return log_gamma(1.0 + a);
}

double log_gamma(double a) {
  require_shape(a, "log_gamma");
  if (a < 0.5) {
    return -std::log(a) + log_gamma_1p(a);
  }
  if (a < 1.5) {
    const double z = a - 1.0;
    return -std::log1p(z) + z * (1.0 - kEulerGamma) + zeta_tail(z);
  }
  if (a < 2.5) {
    return log_gamma_2pz(a - 2.0);
  }
  if (a < kStirlingThreshold) {
    // Shift down into [1.5, 2.5): Gamma(a) = Gamma(a - n) * prod_{k=1}^{n} (a - k).
    const int n = static_cast<int>(std::floor(a - 1.5));
    double prod = 1.0;
    for (int k = 1; k <= n; ++k) prod *= a - k;
    return log_gamma_2pz(a - n - 2.0) + std::log(prod);
  }
  return (a - 0.5) * std::log(a) - a + kLnSqrt2Pi + stirling_correction(a);
}

IncompleteGamma reg_gamma_q_eval(double a, double x) {
  require_shape(a, "reg_gamma_q");
  require_abscissa(x, "reg_gamma_q");
  if (x == 0.0) {
    return {1.0, 0.0, GammaMethod::exact, 0, -std::numeric_limits<double>::infinity()};
  }
  if (x >= a + 1.0) {
    return upper_continued_fraction(a, x);
  }
  if (a < 1.0) {
    return small_shape_upper(a, x);
  }
  IncompleteGamma p = lower_series(a, x);
  p.value = 1.0 - p.value;
  p.error += kUnitRoundoff;
  return p;
}

IncompleteGamma reg_gamma_p_eval(double a, double x) {
  require_shape(a, "reg_gamma_p");
  require_abscissa(x, "reg_gamma_p");
  if (x == 0.0) {
    return {0.0, 0.0, GammaMethod::exact, 0, -std::numeric_limits<double>::infinity()};
  }
  if (x < a + 1.0) {
    return lower_series(a, x);
  }
  IncompleteGamma q = upper_continued_fraction(a, x);
  q.value = 1.0 - q.value;
  q.error += kUnitRoundoff;
  return q;
}

double reg_gamma_q(double a, double x) { return reg_gamma_q_eval(a, x).value; }
double reg_gamma_p(double a, double x) { return reg_gamma_p_eval(a, x).value; }

}  // namespace gammatail::specfun
