#include "gammatail/certify.hpp"

#include "gammatail/error.hpp"
#include "gammatail/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gammatail::certify {
namespace {

constexpr double kGapRelError = 32.0 * kUnitRoundoff;

// Ratios of the diagonal band searched by the optimality probe.
constexpr int kProbePoints = 200;
constexpr double kProbeBand = 0.1;

}  // namespace

MeanGaps mean_gaps(double x, double y) {
  if (!(x > 0.0) || !(y > x) || !std::isfinite(y)) {
    throw DomainError("mean_gaps: need 0 < x < y, finite");
  }
  // Scale by x: t = y/x = e^u, v = u/2, sqrt(xy) = x e^v.
  const double u = std::log1p((y - x) / x);
  const double v = 0.5 * u;
  const specfun::detail::LogMeanParts parts = specfun::detail::log_mean_parts(u, y / x);

  MeanGaps m;
  m.geo = std::sqrt(x) * std::sqrt(y);
  m.log_mean = (y - x) / u;
  m.arith = 0.5 * (x + y);
  // G~^2 - L^2 = x^2 u^2 n(u)
  const double d2 = x * x * u * u * parts.n;
  m.g_tilde = specfun::g_tilde(x, y);
  m.l_minus_g = m.geo * specfun::detail::sinh_minus_id(v) / v;
  m.gt_minus_l = d2 / (m.g_tilde + m.log_mean);
  const double a_minus_l = m.geo * specfun::detail::id_cosh_minus_sinh(v) / v;
  m.a_minus_gt = (a_minus_l * (m.arith + m.log_mean) - d2) / (m.arith + m.g_tilde);
  m.gap_rel_error = kGapRelError;
  return m;
}

double probe_gap(double x, double y, double k) {
  if (!(x > 0.0) || !(y > x)) throw DomainError("probe_gap: need 0 < x < y");
  const double u = std::log1p((y - x) / x);
  const double shifted = specfun::detail::log_mean_parts(u, y / x).shifted;
  // L^2 - G~_k^2 has the sign of (1/3 - k) - (lambda + 1/3).
  return (1.0 / 3.0 - k) - shifted;
}

MeanChainReport check_mean_chain(const std::vector<std::pair<double, double>>& pairs,
                                 const Precision& prec, double probe_factor) {
  prec.validate();
  MeanChainReport rep;
  rep.pairs = pairs.size();
  rep.min_margin_ratio = std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pairs) {
    const MeanGaps m = mean_gaps(x, y);
    double ratio = std::numeric_limits<double>::infinity();
    for (double gap : {m.l_minus_g, m.gt_minus_l, m.a_minus_gt}) {
      const double err = m.gap_rel_error * std::abs(gap);
      ratio = std::min(ratio, gap > 0.0 ? gap / err : -std::numeric_limits<double>::infinity());
    }
    rep.min_margin_ratio = std::min(rep.min_margin_ratio, ratio);
    if (!(ratio > prec.strict_margin)) {
      ++rep.failures;
      if (!rep.first_failure) rep.first_failure = std::make_pair(x, y);
    }
  }

  rep.probe_factor = probe_factor;
  for (int i = 1; i < kProbePoints; ++i) {
    const double t = 1.0 + kProbeBand * i / kProbePoints;
    const double gap = probe_gap(1.0, t, probe_factor);
    const double err = 32.0 * kUnitRoundoff * (1.0 / 3.0);
    if (gap > prec.strict_margin * err) {
      rep.probe_violation_found = true;
      rep.probe_ratio = t;
      break;
    }
  }
  rep.ok = rep.failures == 0 && rep.probe_violation_found;
  return rep;
}

}  // namespace gammatail::certify
