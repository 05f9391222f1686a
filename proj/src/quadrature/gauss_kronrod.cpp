#include "gammatail/error.hpp"
#include "gammatail/numeric.hpp"
#include "gammatail/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace gammatail::quad {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  long id;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.id > y.id;
  }
};

Panel rule(const std::function<double(double)>& f, double lo, double hi, long id) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(centre);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kron *= half;
  gauss *= half;
  if (!std::isfinite(kron)) {
    throw ConvergenceError("quadrature: integrand is not finite on the panel", INFINITY);
  }
  const double err = std::abs(kron - gauss) + 50.0 * kUnitRoundoff * std::abs(kron);
  return {lo, hi, kron, err, id};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Options& opts) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("quadrature: interval bounds must be finite");
  }
  if (lo == hi) return {0.0, 0.0, 0};
  double sign = 1.0;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
  std::vector<Panel> settled;
  long next_id = 0;
  queue.push(rule(f, lo, hi, next_id++));
  int panels = 1;
  double value = queue.top().value;
  double error = queue.top().error;

  while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
    if (queue.empty()) {
      throw ConvergenceError("quadrature: panels too narrow to refine", error);
    }
    if (panels >= opts.max_panels) {
      throw ConvergenceError("quadrature: panel budget exhausted", error);
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      settled.push_back(worst);
      continue;
    }
    const Panel left = rule(f, worst.lo, mid, next_id++);
    const Panel right = rule(f, mid, worst.hi, next_id++);
    queue.push(left);
    queue.push(right);
    ++panels;
    value += (left.value + right.value) - worst.value;
    error += (left.error + right.error) - worst.error;
  }

  // Final sum in interval order so the result does not depend on the
  // incremental update history.
  while (!queue.empty()) {
    settled.push_back(queue.top());
    queue.pop();
  }
  std::sort(settled.begin(), settled.end(),
            [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  value = 0.0;
  error = 0.0;
  for (const Panel& p : settled) {
    value += p.value;
    error += p.error;
  }
  return {sign * value, error, panels};
}

}  // namespace gammatail::quad
