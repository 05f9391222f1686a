#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

#include <functional>

namespace gammatail::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_panels = 10000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

/// Integrates `f` over [lo, hi] by global adaptive bisection, always
/// splitting the panel with the largest error estimate. Throws
/// ConvergenceError if the panel budget runs out before
/// error <= max(abs_tol, rel_tol * |value|).
Result integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Options& opts = {});

}  // namespace gammatail::quad
