#pragma once

#include <cmath>
#include <limits>

namespace gammatail {

/// Unit roundoff of IEEE double (half an ulp of 1).
inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

inline constexpr double kE = 2.718281828459045;
/// e - kE, so that kE + kELow represents e to ~32 digits.
inline constexpr double kELow = 1.4456468917292502e-16;
inline constexpr double kInvE = 0.36787944117144233;
inline constexpr double kEulerGamma = 0.57721566490153286;
inline constexpr double kLnSqrt2Pi = 0.91893853320467274;

/// A computed value together with an upper estimate of its absolute error.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

inline bool is_finite(double x) { return std::isfinite(x); }

}  // namespace gammatail
