#include "gammatail/error.hpp"
#include "gammatail/specfun.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

namespace gammatail::specfun {
namespace {

constexpr int kTerms = 32;

struct SeriesTables {
  std::array<double, kTerms> a1{};
  std::array<double, kTerms> b1{};
  std::array<double, kTerms> n{};
};

// Taylor coefficients in u = ln y of
//   a1(u) = (e^u - 1 - u) / u^2,  b1(u) = (u e^u - e^u + 1) / u^2,
//   n(u)  = [u^2 e^u - (e^u - 1)^2 + u^4 a1 b1 / 3] / u^4,
// built once in long double.
SeriesTables build_tables() {
  std::array<long double, kTerms + 8> inv_fact{};
  inv_fact[0] = 1.0L;
  for (int k = 1; k < kTerms + 8; ++k) inv_fact[k] = inv_fact[k - 1] / k;

  std::array<long double, kTerms> a{};
  std::array<long double, kTerms> b{};
  for (int k = 0; k < kTerms; ++k) {
    a[k] = inv_fact[k + 2];
    b[k] = (k + 1) * inv_fact[k + 2];
  }
  SeriesTables t;
  for (int k = 0; k < kTerms; ++k) {
    const int m = k + 4;
    const long double c = (static_cast<long double>(m) * m - m + 2 - std::ldexp(1.0L, m)) * inv_fact[m];
    long double conv = 0.0L;
    for (int i = 0; i <= k; ++i) conv += a[i] * b[k - i];
    const long double nk = c + conv / 3.0L;
    t.a1[k] = static_cast<double>(a[k]);
    t.b1[k] = static_cast<double>(b[k]);
    t.n[k] = (k < 2) ? 0.0 : static_cast<double>(nk);
  }
  return t;
}

const SeriesTables& tables() {
  static const SeriesTables t = build_tables();
  return t;
}

double horner(const std::array<double, kTerms>& c, double u) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * u + c[i];
  return acc;
}

void require_positive(double x, const char* op) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(op) + ": arguments must be positive and finite");
  }
}

// ln(y / x) for 0 < x < y without cancellation near the diagonal.
double log_ratio(double x, double y) {
  const double r = (y - x) / x;
  return std::isfinite(r) ? std::log1p(r) : std::log(y) - std::log(x);
}

}  // namespace

namespace detail {

LogMeanParts log_mean_parts(double u, double y) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("log_mean_parts: u must be positive");
  LogMeanParts p;
  if (u <= kLogMeanSeriesLimit) {
    const SeriesTables& t = tables();
    p.a1 = horner(t.a1, u);
    p.b1 = horner(t.b1, u);
    p.n = horner(t.n, u);
    p.shifted = p.n / (p.a1 * p.b1);
    p.lambda = p.shifted - 1.0 / 3.0;
    return p;
  }
  const double ym1 = y - 1.0;
  const double num = u * u - ym1 * (1.0 - 1.0 / y);
  const double d1 = ym1 - u;
  const double d2 = u - 1.0 + 1.0 / y;
  p.lambda = num / (d1 * d2);
  p.shifted = p.lambda + 1.0 / 3.0;
  p.a1 = d1 / (u * u);
  p.b1 = d2 * y / (u * u);
  p.n = p.a1 * p.b1 * p.shifted;
  return p;
}

double sinh_minus_id(double v) {
  if (std::abs(v) >= 1.0) return std::sinh(v) - v;
  const double v2 = v * v;
  double term = v * v2 / 6.0;
  double sum = 0.0;
  for (int k = 2; k < 40; ++k) {
    sum += term;
    if (std::abs(term) <= kUnitRoundoff * std::abs(sum)) break;
    term *= v2 / ((2.0 * k) * (2.0 * k + 1.0));
  }
  return sum;
}

double id_cosh_minus_sinh(double v) {
  if (std::abs(v) >= 1.0) return v * std::cosh(v) - std::sinh(v);
  // sum_{k>=1} 2k v^{2k+1} / (2k+1)!
  const double v2 = v * v;
  double power = v * v2 / 6.0;  // v^{2k+1} / (2k+1)! at k = 1
  double sum = 0.0;
  for (int k = 1; k < 40; ++k) {
    const double term = 2.0 * k * power;
    sum += term;
    if (std::abs(term) <= kUnitRoundoff * std::abs(sum)) break;
    power *= v2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }
  return sum;
}

}  // namespace detail

double log_mean(double x, double y) {
  require_positive(x, "log_mean");
  require_positive(y, "log_mean");
  if (x == y) return x;
  if (x > y) std::swap(x, y);
  return (y - x) / log_ratio(x, y);
}

double lambda_shifted(double y) {
  if (!(y > 1.0) || !std::isfinite(y)) throw DomainError("lambda: y must be finite and > 1");
  return detail::log_mean_parts(std::log(y), y).shifted;
}

double lambda_fn(double y) {
  if (!(y > 1.0) || !std::isfinite(y)) throw DomainError("lambda: y must be finite and > 1");
  return detail::log_mean_parts(std::log(y), y).lambda;
}

double g_tilde(double x, double y) {
  require_positive(x, "g_tilde");
  require_positive(y, "g_tilde");
  if (x == y) return x;
  if (x > y) std::swap(x, y);
  const double rm1 = (y - x) / x;
  const double u = std::log1p(rm1);
  const double r = 1.0 + rm1;
  const double l = rm1 / u;
  if (u <= detail::kLogMeanSeriesLimit) {
    const detail::LogMeanParts p = detail::log_mean_parts(u, r);
    return x * std::sqrt(l * l + u * u * p.n);
  }
  return x * std::sqrt(r + (l - 1.0) * (r - l) / 3.0);
}

}  // namespace gammatail::specfun
