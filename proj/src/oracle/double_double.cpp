#include "gammatail/double_double.hpp"

#include <cmath>

namespace gammatail::oracle {

DD log(const DD& a) {
  if (!(a.hi > 0.0)) return DD(std::nan(""));
  int e = 0;
  double m = std::frexp(a.hi, &e);
  if (m < 0.70710678118654752) {
    m *= 2.0;
    --e;
  }
  const DD scaled(std::ldexp(a.hi, -e), std::ldexp(a.lo, -e));
  // ln m = 2 atanh(w), w = (m - 1)/(m + 1), |w| < 0.1716.
  const DD w = (scaled - DD(1.0)) / (scaled + DD(1.0));
  const DD w2 = w * w;
  DD power = w;
  DD sum(0.0);
  for (int k = 0; k < 60; ++k) {
    const DD term = power / DD(2.0 * k + 1.0);
    sum += term;
    if (std::abs(term.hi) < 1e-34 * std::abs(sum.hi) || term.hi == 0.0) break;
    power *= w2;
  }
  const DD ln2(0.6931471805599453, 2.3190468138462996e-17);
  return DD(2.0) * sum + DD(static_cast<double>(e)) * ln2;
}

}  // namespace gammatail::oracle
