#pragma once

// Median of the Gamma(a, 1) distribution and the bracket checks around it.

#include "gammatail/precision.hpp"

#include <vector>

namespace gammatail::median {

struct MedianResult {
  double a = 0.0;
  double median = 0.0;
  /// median - a
  double offset = 0.0;
  /// |Q(a, median) - 1/2|
  double residual = 0.0;
  int iterations = 0;
  /// Offset lies in (-1/3, 0) with strict_margin times its uncertainty to spare.
  bool offset_certified = false;
};

/// Solves Q(a, m) = 1/2 on the bracket [max(a - 1/3, tiny), a]. Throws
/// CertificationError if Q does not change sign across the bracket.
MedianResult gamma_median(double a, const Precision& prec);

struct BracketRow {
  double a = 0.0;
  double p_zero = 0.0;       // P(X_a - a > 0)
  double p_third = 0.0;      // P(X_a - a > -1/3)
  double err_zero = 0.0;
  double err_third = 0.0;
  bool ok = false;
};

struct BracketReport {
  std::vector<BracketRow> rows;
  double min_margin_ratio = 0.0;
  bool ok = false;
};

/// Certifies p(a, 0) < 1/2 < p(a, -1/3) at each grid point.
BracketReport bracket_check(const std::vector<double>& a_grid, const Precision& prec);

}  // namespace gammatail::median
