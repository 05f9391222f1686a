#include "gammatail/tailprob.hpp"

#include "gammatail/error.hpp"
#include "gammatail/quadrature.hpp"

#include <cmath>

namespace gammatail::tail {

void TailQuery::validate() const {
  if (!std::isfinite(a) || !std::isfinite(c)) {
    throw DomainError("tail query: a and c must be finite");
  }
  if (!(a > 0.0)) throw DomainError("tail query: a must be positive");
}

TailEvaluation evaluate(const TailQuery& q) {
  q.validate();
  const double x = q.a + q.c;
  if (x <= 0.0) return {1.0, 0.0, specfun::GammaMethod::exact, true};
  const specfun::IncompleteGamma g = specfun::reg_gamma_q_eval(q.a, x);
  // |dQ/dx| * x = x^a e^{-x} / Gamma(a); x carries one rounding from a + c.
  const double density_x = std::exp(g.log_prefactor);
  return {g.value, g.error + 2.0 * kUnitRoundoff * density_x, g.method, false};
}

double tail_prob(const TailQuery& q) { return evaluate(q).value; }

Estimate difference(const TailEvaluation& hi, const TailEvaluation& lo) {
  const double d = hi.value - lo.value;
  return {d, hi.error + lo.error + kUnitRoundoff * std::abs(d)};
}

Estimate tail_delta(double a, double c) {
  const TailEvaluation lo = evaluate({a, c});
  const TailEvaluation hi = evaluate({a + 1.0, c});
  return difference(hi, lo);
}

RatioParts ratio_parts(double u, double c) {
  if (!std::isfinite(u) || !std::isfinite(c)) {
    throw DomainError("ratio_parts: u and c must be finite");
  }
  if (!(u > -1.0)) throw DomainError("ratio_parts: u must exceed -1");
  const double k = u + c + 1.0;
  if (!(k > 0.0)) throw DomainError("ratio_parts: u + c must exceed -1");

  const quad::Options opts{0.0, 1e-10, 10000};
  const double b = 1.0 + c;

  // I: x = s^{1/(u+1)} absorbs the factor x^u dx into ds / (u+1).
  const double inv_up1 = 1.0 / (u + 1.0);
  const auto fi = [&](double s) {
    const double x = std::pow(s, inv_up1);
    return std::exp(u * (1.0 - x) - b * x);
  };
  // J: x = 1 - ln(t), then t = s^{1/k}, mapping (1, inf) onto (0, 1].
  const auto fj = [&](double s) {
    return std::pow(1.0 - std::log(s) / k, u);
  };
  RatioParts r;
  r.u = u;
  r.c = c;
  const quad::Result ri = quad::integrate(fi, 0.0, 1.0, opts);
  const quad::Result rj = quad::integrate(fj, 0.0, 1.0, opts);
  const double jscale = std::exp(-b) / k;
  r.I = ri.value * inv_up1;
  r.I_error = ri.error * inv_up1;
  r.J = rj.value * jscale;
  r.J_error = rj.error * jscale;
  r.R = r.I / r.J;
  return r;
}

double m_c(const specfun::BranchRoots& roots, double c) {
  const double g1 = roots.gap1;
  const double g2 = roots.gap2;
  return (g1 - g2) + (1.0 + c) * g1 * g2;
}

double log_integrand_ratio(const specfun::BranchRoots& roots, double c, double abs_tol) {
  if (roots.gap1 < abs_tol || roots.gap2 < abs_tol) {
    throw DegenerateError("integrand_ratio: roots too close to 1");
  }
  return (1.0 + c) * (roots.gap1 + roots.gap2) + std::log(roots.x1) + std::log(roots.gap2) -
         std::log(roots.x2) - std::log(roots.gap1);
}

double integrand_ratio(const specfun::BranchRoots& roots, double c, double abs_tol) {
  return std::exp(log_integrand_ratio(roots, c, abs_tol));
}

double power_function(double theta, double c) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw DomainError("power_function: theta must be positive and finite");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("power_function: c must be positive and finite");
  }
  return tail_prob({theta, c});
}

}  // namespace gammatail::tail
