#include "gammatail/certify.hpp"

#include "gammatail/error.hpp"
#include "gammatail/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gammatail::certify {
namespace {

// Relative error model for the shifted stage values; every form below is a
// short sequence of cancellation-free operations.
constexpr double kStageRelError = 32.0 * kUnitRoundoff;
constexpr double kLimitPoint = 1.0 + 1e-8;

// u (cosh u - 1) - 3 (sinh u - u) = sum_{k>=2} (2k - 2) u^{2k+1} / (2k+1)!
double s1_numerator(double u) {
  if (u > 4.0) return u * (std::cosh(u) - 1.0) - 3.0 * (std::sinh(u) - u);
  const double u2 = u * u;
  double power = u2 * u2 * u / 120.0;  // u^5 / 5!
  double sum = 0.0;
  for (int k = 2; k < 60; ++k) {
    const double term = (2.0 * k - 2.0) * power;
    sum += term;
    if (term <= kUnitRoundoff * sum) break;
    power *= u2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }
  return sum;
}

double require_y(double y) {
  if (!(y > 1.0) || !std::isfinite(y)) throw DomainError("threshold chain: y must exceed 1");
  return std::log(y);
}

}  // namespace

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::lambda: return "lambda";
    case Stage::f1_g1: return "f1/g1";
    case Stage::f2_g2: return "f2/g2";
    case Stage::r3: return "r3";
  }
  return "unknown";
}

double stage_shifted(Stage s, double y) {
  const double u = require_y(y);
  switch (s) {
    case Stage::lambda:
      return specfun::lambda_shifted(y);
    case Stage::f1_g1: {
      const double sh = std::sinh(0.5 * u);
      return s1_numerator(u) / (6.0 * u * sh * sh);
    }
    case Stage::f2_g2: {
      const double w = 0.5 * u;
      const double t = std::tanh(w);
      const double w_minus_t = w < 1.0 ? specfun::detail::id_cosh_minus_sinh(w) / std::cosh(w)
                                       : w - t;
      return 2.0 * w_minus_t / (3.0 * (u + t));
    }
    case Stage::r3: {
      const double sh = std::sinh(0.5 * u);
      return 2.0 * sh * sh / (3.0 * (2.0 + std::cosh(u)));
    }
  }
  return 0.0;
}

double stage_direct(Stage s, double y) {
  const double l = require_y(y);
  switch (s) {
    case Stage::lambda: {
      const double f = (y * l * l - (y - 1.0) * (y - 1.0)) / y;
      const double g = (y - l - 1.0) * (y * l - y + 1.0) / y;
      return f / g;
    }
    case Stage::f1_g1: {
      const double f1 = 1.0 / y - y + 2.0 * l;
      const double g1 = (y - 1.0) * (y - 1.0) * l / y;
      return f1 / g1;
    }
    case Stage::f2_g2: {
      const double f2 = (1.0 - y) / (1.0 + y);
      const double g2 = l + (y - 1.0) / (1.0 + y);
      return f2 / g2;
    }
    case Stage::r3:
      return -2.0 * y / (1.0 + 4.0 * y + y * y);
  }
  return 0.0;
}

double r3_derivative(double y) {
  const double d = 1.0 + 4.0 * y + y * y;
  return 2.0 * (y * y - 1.0) / (d * d);
}

namespace {

// Numerators and denominators of each stage in y, for derivative checks.
double f0(double y) { const double l = std::log(y); return (y * l * l - (y - 1.0) * (y - 1.0)) / y; }
double g0(double y) { const double l = std::log(y); return (y - l - 1.0) * (y * l - y + 1.0) / y; }
double f1(double y) { return 1.0 / y - y + 2.0 * std::log(y); }
double g1(double y) { return (y - 1.0) * (y - 1.0) * std::log(y) / y; }
double f2(double y) { return (1.0 - y) / (1.0 + y); }
double g2(double y) { return std::log(y) + (y - 1.0) / (1.0 + y); }

double central(double (*fn)(double), double y) {
  const double h = 1e-4 * y;
  return (fn(y + h) - fn(y - h)) / (2.0 * h);
}

}  // namespace

ThresholdChainReport check_threshold_chain(const std::vector<double>& y_grid, const Precision& prec) {
  prec.validate();
  for (double y : y_grid) require_y(y);
  std::vector<double> ys = y_grid;
  std::sort(ys.begin(), ys.end());

  ThresholdChainReport rep;
  bool all_ok = true;
  for (Stage s : {Stage::lambda, Stage::f1_g1, Stage::f2_g2, Stage::r3}) {
    StageReport sr;
    sr.stage = s;
    sr.increasing = ys.size() >= 2;
    sr.margin_ratio = std::numeric_limits<double>::infinity();
    double prev = stage_shifted(s, ys.front());
    for (std::size_t i = 1; i < ys.size(); ++i) {
      const double cur = stage_shifted(s, ys[i]);
      const double err = kStageRelError * (std::abs(cur) + std::abs(prev));
      const double ratio = (cur - prev) / err;
      sr.margin_ratio = std::min(sr.margin_ratio, ratio);
      if (!(ratio > prec.strict_margin) && sr.increasing) {
        sr.increasing = false;
        sr.failed_at = ys[i];
      }
      prev = cur;
    }
    sr.limit_value = stage_shifted(s, kLimitPoint) - 1.0 / 3.0;
    sr.limit_ok = std::abs(sr.limit_value + 1.0 / 3.0) <= 1e-6;
    all_ok = all_ok && sr.increasing && sr.limit_ok;
    rep.stages.push_back(sr);
  }

  rep.r3_derivative_positive = true;
  for (double y : ys) {
    if (!(r3_derivative(y) > 0.0)) rep.r3_derivative_positive = false;
    if (y < 1.5) continue;
    for (Stage s : {Stage::lambda, Stage::f1_g1, Stage::f2_g2, Stage::r3}) {
      const double diff = std::abs(stage_shifted(s, y) - 1.0 / 3.0 - stage_direct(s, y));
      rep.direct_form_max_abs_diff = std::max(rep.direct_form_max_abs_diff, diff);
    }
    if (y > 1e3) continue;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    const double fd_r3 = central([](double t) { return stage_direct(Stage::r3, t); }, y);
    rep.r3_derivative_max_rel_error =
        std::max(rep.r3_derivative_max_rel_error, rel(fd_r3, r3_derivative(y)));
    const double e0 = rel(central(f0, y) / central(g0, y), stage_direct(Stage::f1_g1, y));
    const double e1 = rel(central(f1, y) / central(g1, y), stage_direct(Stage::f2_g2, y));
    const double e2 = rel(central(f2, y) / central(g2, y), stage_direct(Stage::r3, y));
    rep.derivative_ratio_max_rel_error =
        std::max({rep.derivative_ratio_max_rel_error, e0, e1, e2});
  }
  rep.ok = all_ok && rep.r3_derivative_positive && rep.direct_form_max_abs_diff <= 1e-9 &&
           rep.r3_derivative_max_rel_error <= 1e-6 && rep.derivative_ratio_max_rel_error <= 1e-6;
  return rep;
}

}  // namespace gammatail::certify
