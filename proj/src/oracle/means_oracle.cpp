#include "gammatail/error.hpp"
#include "gammatail/oracle.hpp"

#include <cmath>

namespace gammatail::oracle {

DD oracle_lambda(double y) {
  if (!(y > 1.0) || !std::isfinite(y)) throw DomainError("oracle_lambda: y must exceed 1");
  const DD Y(y);
  const DD one(1.0);
  const DD l = (Y - one) / log(Y);
  return (Y - l * l) / ((l - one) * (Y - l));
}

MeanGaps oracle_mean_gaps(double x, double y) {
  if (!(x > 0.0) || !(y > x) || !std::isfinite(y)) {
    throw DomainError("oracle_mean_gaps: need 0 < x < y");
  }
  const DD X(x);
  const DD Y(y);
  MeanGaps m;
  m.geo = sqrt(two_prod(x, y));
  m.log_mean = (Y - X) / (log(Y) - log(X));
  m.arith = (X + Y) * DD(0.5);
  m.g_tilde = sqrt(two_prod(x, y) + (m.log_mean - X) * (Y - m.log_mean) / DD(3.0));
  m.l_minus_g = m.log_mean - m.geo;
  m.gt_minus_l = m.g_tilde - m.log_mean;
  m.a_minus_gt = m.arith - m.g_tilde;
  return m;
}

}  // namespace gammatail::oracle
