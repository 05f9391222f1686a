#pragma once

#include "gammatail/error.hpp"

#include <cmath>

namespace gammatail {

/// Tolerances shared by the solvers and the certification engine.
///
/// `strict_margin` is the factor by which a difference must exceed its
/// combined error bound before its sign counts as certified.
struct Precision {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_iter = 200;
  double strict_margin = 8.0;

  void validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(rel_tol) || !positive(abs_tol) || !positive(strict_margin)) {
      throw DomainError("Precision: tolerances and strict_margin must be positive and finite");
    }
    if (max_iter < 1) {
      throw DomainError("Precision: max_iter must be >= 1");
    }
  }
};

}  // namespace gammatail
