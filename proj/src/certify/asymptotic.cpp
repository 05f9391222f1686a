#include "gammatail/certify.hpp"

#include "gammatail/error.hpp"
#include "gammatail/quadrature.hpp"
#include "gammatail/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace gammatail::certify {

double asymptotic_integrand(double eps, double z, double b) {
  // ln[(1 - b eps)(1 - z eps)^{1/eps - b - 1} e^z]
  //   = log1p(-b eps) + (1/eps - b - 1) log1pmx(-z eps) + z (b + 1) eps
  const double g = std::log1p(-b * eps) + (1.0 / eps - b - 1.0) * specfun::log1pmx(-z * eps) +
                   z * (b + 1.0) * eps;
  return -std::expm1(g);
}

AsymptoticReport check_asymptotic(double c, const std::vector<double>& eps,
                                  const Precision& prec) {
  prec.validate();
  if (!(c > -1.0 / 3.0 && c < 0.0)) {
    throw DomainError("check_asymptotic: c must lie strictly inside (-1/3, 0)");
  }
  if (eps.size() < 3) throw DomainError("check_asymptotic: need at least three eps values");
  for (double e : eps) {
    if (!(e > 0.0 && e < 0.2)) throw DomainError("check_asymptotic: eps must lie in (0, 0.2)");
  }

  AsymptoticReport rep;
  rep.c = c;
  rep.b = c + 1.0;
  rep.eps = eps;
  rep.expected_slope = rep.b - 2.0 / 3.0;
  rep.positive = true;

  const quad::Options opts{1e-300, 1e-12, 10000};
  for (double e : eps) {
    const auto g = [&](double z) { return asymptotic_integrand(e, z, rep.b); };
    const double s = 2.0 * quad::integrate(g, 0.0, 1.0, opts).value;
    rep.integral.push_back(s);
    if (!(s > 0.0)) rep.positive = false;

    // Normalised forward difference at a = 1/eps - b must equal int g.
    const double a = 1.0 / e - rep.b;
    const Estimate d = tail::tail_delta(a, c);
    const double ab = a + rep.b;
    const double scale = std::exp(specfun::log_gamma(a + 1.0) - a * std::log(ab) + ab);
    const double rel = std::abs(d.value * scale - 0.5 * s) / (0.5 * s);
    rep.identity_max_rel_error = std::max(rep.identity_max_rel_error, rel);
  }

  // Least squares for S / eps = slope + curvature * eps.
  const double n = static_cast<double>(eps.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double x = eps[i];
    const double y = rep.integral[i] / eps[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.curvature = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  rep.slope = (sy - rep.curvature * sx) / n;
  rep.slope_rel_error = std::abs(rep.slope - rep.expected_slope) / rep.expected_slope;

  const double eps_max = *std::max_element(eps.begin(), eps.end());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double fit = rep.slope * eps[i] + rep.curvature * eps[i] * eps[i];
    rep.max_residual = std::max(rep.max_residual, std::abs(rep.integral[i] - fit));
  }
  rep.residual_ok = rep.max_residual <= eps_max * eps_max * eps_max;
  rep.ok = rep.positive && rep.residual_ok && rep.slope_rel_error <= 0.02 &&
           rep.identity_max_rel_error <= 1e-7;
  return rep;
}

}  // namespace gammatail::certify
