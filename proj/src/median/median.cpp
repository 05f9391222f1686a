#include "gammatail/median.hpp"

#include "gammatail/error.hpp"
#include "gammatail/specfun.hpp"
#include "gammatail/tailprob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gammatail::median {
namespace {

double residual_fn(double a, double m) { return specfun::reg_gamma_q(a, m) - 0.5; }

}  // namespace

MedianResult gamma_median(double a, const Precision& prec) {
  prec.validate();
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("gamma_median: a must be positive");

  double lo = std::max(a - 1.0 / 3.0, std::numeric_limits<double>::min());
  double hi = a;
  double flo = residual_fn(a, lo);
  double fhi = residual_fn(a, hi);
  if (!(flo > 0.0 && fhi < 0.0)) {
    throw CertificationError("gamma_median: Q(a, m) - 1/2 does not change sign on [a - 1/3, a]");
  }

  MedianResult r;
  r.a = a;
  int it = 0;
  // Shrink wide brackets geometrically (tiny medians for small a), then
  // bisect down to a narrow bracket.
  while (it < prec.max_iter && hi - lo > 1e-3 * hi) {
    const double mid = hi / lo > 2.0 ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
    const double f = residual_fn(a, mid);
    ++it;
    if (f == 0.0) {
      lo = hi = mid;
      flo = fhi = 0.0;
      break;
    }
    if (f > 0.0) {
      lo = mid;
      flo = f;
    } else {
      hi = mid;
      fhi = f;
    }
  }

  // Brent's method: inverse quadratic interpolation or secant steps,
  // falling back to bisection whenever they would leave the bracket.
  double pa = lo, fa = flo;
  double b = hi, fb = fhi;
  double c = pa, fc = fa;
  double d = b - pa;
  double e = d;
  while (it < prec.max_iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = pa;
      fc = fa;
      d = e = b - pa;
    }
    if (std::abs(fc) < std::abs(fb)) {
      pa = b;
      b = c;
      c = pa;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * kUnitRoundoff * std::abs(b);
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol || fb == 0.0) break;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (pa == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - pa) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    pa = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (xm > 0.0 ? tol : -tol);
    fb = residual_fn(a, b);
    ++it;
  }
  if (fb == 0.0) {
    lo = hi = b;
  } else {
    lo = std::min(b, c);
    hi = std::max(b, c);
  }

  // Take whichever end of the final bracket has the smaller residual.
  double best = b;
  double fbest = std::abs(fb);
  for (double cand : {lo, hi}) {
    const double f = std::abs(residual_fn(a, cand));
    if (f < fbest) {
      best = cand;
      fbest = f;
    }
  }
  r.median = best;
  r.offset = best - a;
  r.residual = fbest;
  r.iterations = it;
  const double uncertainty = std::max(hi - lo, 2.0 * kUnitRoundoff * a) + kUnitRoundoff * a;
  r.offset_certified = r.offset < -prec.strict_margin * uncertainty &&
                       r.offset > -1.0 / 3.0 + prec.strict_margin * uncertainty;
  return r;
}

BracketReport bracket_check(const std::vector<double>& a_grid, const Precision& prec) {
  prec.validate();
  BracketReport rep;
  rep.ok = true;
  rep.min_margin_ratio = std::numeric_limits<double>::infinity();
  for (double a : a_grid) {
    const tail::TailEvaluation z = tail::evaluate({a, 0.0});
    const tail::TailEvaluation t = tail::evaluate({a, -1.0 / 3.0});
    BracketRow row;
    row.a = a;
    row.p_zero = z.value;
    row.p_third = t.value;
    row.err_zero = z.error;
    row.err_third = t.error;
    const double r1 = (0.5 - z.value) / (z.error + kUnitRoundoff);
    const double r2 = (t.value - 0.5) / (t.error + kUnitRoundoff);
    row.ok = r1 > prec.strict_margin && r2 > prec.strict_margin;
    rep.min_margin_ratio = std::min({rep.min_margin_ratio, r1, r2});
    rep.ok = rep.ok && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace gammatail::median
