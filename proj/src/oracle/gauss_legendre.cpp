#include "gammatail/error.hpp"
#include "gammatail/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace gammatail::oracle {
namespace {

constexpr int kOrder = 20;

struct Rule {
  std::array<double, kOrder> x{};
  std::array<double, kOrder> w{};
};

// Nodes and weights by Newton iteration on P_20 in long double.
Rule build_rule() {
  Rule r;
  const long double pi = 3.141592653589793238462643383279502884L;
  for (int i = 0; i < kOrder; ++i) {
    long double x = std::cos(pi * (i + 0.75L) / (kOrder + 0.5L));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (int n = 2; n <= kOrder; ++n) {
        const long double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = kOrder * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-30L) break;
    }
    {
      long double p0 = 1.0L;
      long double p1 = x;
      for (int n = 2; n <= kOrder; ++n) {
        const long double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = kOrder * (x * p1 - p0) / (x * x - 1.0L);
    }
    r.x[i] = static_cast<double>(x);
    r.w[i] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
  }
  return r;
}

const Rule& rule() {
  static const Rule r = build_rule();
  return r;
}

DD panel(const std::function<double(double)>& f, double lo, double hi) {
  const Rule& r = rule();
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  DD sum(0.0);
  for (int i = 0; i < kOrder; ++i) {
    sum += two_prod(r.w[i], f(centre + half * r.x[i]));
  }
  return sum * DD(half);
}

DD refine(const std::function<double(double)>& f, double lo, double hi, const DD& whole,
          double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const DD left = panel(f, lo, mid);
  const DD right = panel(f, mid, hi);
  const DD both = left + right;
  // Integrand values carry double rounding, so agreement below a few ulps of
  // the panel sum is all that can be asked for.
  const double floor = 8.0 * 1.1102230246251565e-16 * std::abs(both.hi);
  if (std::abs((both - whole).hi) <= std::max(tol, floor)) return both;
  if (depth >= 60 || !(mid > lo && mid < hi)) {
    throw ConvergenceError("oracle quadrature: refinement depth exceeded",
                           std::abs((both - whole).hi));
  }
  return refine(f, lo, mid, left, 0.5 * tol, depth + 1) +
         refine(f, mid, hi, right, 0.5 * tol, depth + 1);
}

}  // namespace

DD integrate(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
             double initial_width) {
  if (!(hi > lo)) return DD(0.0);
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / initial_width)));
  const double width = (hi - lo) / n;
  std::vector<DD> coarse(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = lo + i * width;
    const double b = (i + 1 == n) ? hi : lo + (i + 1) * width;
    coarse[i] = panel(f, a, b);
    scale += std::abs(coarse[i].hi);
  }
  if (scale == 0.0) return DD(0.0);
  const double tol = rel_tol * scale / n;
  DD total(0.0);
  for (int i = 0; i < n; ++i) {
    const double a = lo + i * width;
    const double b = (i + 1 == n) ? hi : lo + (i + 1) * width;
    total += refine(f, a, b, coarse[i], tol, 0);
  }
  return total;
}

}  // namespace gammatail::oracle
