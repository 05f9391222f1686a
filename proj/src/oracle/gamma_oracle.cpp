#include "gammatail/error.hpp"
#include "gammatail/oracle.hpp"

#include <cmath>
#include <string>

// Gamma integrals in the variable d = ln(t / a):
//   t^{a-1} e^{-t} dt = a^a e^{-a} exp(-a phi(d)) dd,  phi(d) = e^d - 1 - d.
// The common factor a^a e^{-a} cancels in Q and P.

namespace gammatail::oracle {
namespace {

constexpr double kRelTol = 1e-15;
constexpr double kCutoff = 100.0;

double phi(double d) {
  if (std::abs(d) >= 0.5) return std::expm1(d) - d;
  double term = d * d / 2.0;
  double sum = 0.0;
  for (int k = 3; k < 40; ++k) {
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    term *= d / k;
  }
  return sum;
}

double panel_width(double a) { return std::min(1.0, 2.0 / std::sqrt(a)); }

// a (phi(r + e) - phi(r)) = a (expm1(r) expm1(e) + phi(e)). When r and e
// share a sign both terms are non-negative, so nothing cancels.
double exponent(double a, double r, double e) {
  return a * (std::expm1(r) * std::expm1(e) + phi(e));
}

// ln of int_{lo}^{inf} exp(-a phi(d)) dd, integrated in e = d - r with
// r = max(lo, 0).
double log_upper(double a, double lo) {
  const double r = std::max(lo, 0.0);
  const double step = panel_width(a);
  double hi = 0.0;
  while (exponent(a, r, hi) < kCutoff) hi += step;
  const auto f = [&](double e) { return std::exp(-exponent(a, r, e)); };
  const DD v = integrate(f, lo - r, hi, kRelTol, step);
  return std::log(v.hi) + v.lo / v.hi - a * phi(r);
}

// ln of int_{-inf}^{hi} exp(-a phi(d)) dd, integrated in e = d - r with
// r = min(hi, 0).
double log_lower(double a, double hi) {
  const double r = std::min(hi, 0.0);
  const double step = panel_width(a);
  // Below d_t the integrand is e^{a + a d}(1 - a e^d) to double precision.
  const double d_t = std::min(std::log(1e-17 / a), hi);
  double lo = 0.0;
  while (r + lo > d_t && exponent(a, r, lo) < kCutoff) lo -= step;
  DD tail(0.0);
  if (r + lo <= d_t) {
    lo = d_t - r;
    const double head = std::exp(a * (std::exp(r) + d_t - r)) / a;
    tail = DD(head) * DD(1.0 - a * a * std::exp(d_t) / (a + 1.0));
  }
  const auto f = [&](double e) { return std::exp(-exponent(a, r, e)); };
  const DD v = integrate(f, lo, hi - r, kRelTol, step) + tail;
  return std::log(v.hi) + v.lo / v.hi - a * phi(r);
}

void require(double a, double x, const char* op) {
  if (!(a > 0.0) || !std::isfinite(a) || !(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(op) + ": need a > 0 and x >= 0, both finite");
  }
}

double split_point(double a, double x) { return std::log1p((x - a) / a); }

}  // namespace

double oracle_gamma_q(double a, double x) {
  require(a, x, "oracle_gamma_q");
  if (x == 0.0) return 1.0;
  const double d = split_point(a, x);
  return 1.0 / (1.0 + std::exp(log_lower(a, d) - log_upper(a, d)));
}

double oracle_gamma_p(double a, double x) {
  require(a, x, "oracle_gamma_p");
  if (x == 0.0) return 0.0;
  const double d = split_point(a, x);
  return 1.0 / (1.0 + std::exp(log_upper(a, d) - log_lower(a, d)));
}

double oracle_log_gamma(double a) {
  require(a, 1.0, "oracle_log_gamma");
  const double lu = log_upper(a, 0.0);
  const double ll = log_lower(a, 0.0);
  const double m = std::max(lu, ll);
  const double total = m + std::log(std::exp(lu - m) + std::exp(ll - m));
  return a * std::log(a) - a + total;
}

double oracle_tail_prob(double a, double c) {
  const double x = a + c;
  if (x <= 0.0) return 1.0;
  return oracle_gamma_q(a, x);
}

}  // namespace gammatail::oracle
