#include "gammatail/error.hpp"
#include "gammatail/oracle.hpp"

#include <cmath>

namespace gammatail::oracle {
namespace {

constexpr double kInvE = 0.36787944117144233;

// Bisection for an increasing predicate sign: g(lo) < 0 < g(hi).
template <typename G>
double bisect(G g, double lo, double hi) {
  if (!(g(lo) <= 0.0 && g(hi) >= 0.0)) {
    throw DomainError("oracle_root: bracket does not enclose a sign change");
  }
  for (int i = 0; i < 4000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) return mid;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ln x + 1 - x with x near 1 handled through t = x - 1.
double log_f(double x) {
  const double t = x - 1.0;
  return std::log1p(t) - t;
}

}  // namespace

double oracle_root(RootFn fn, double target) {
  if (!std::isfinite(target)) throw DomainError("oracle_root: target must be finite");
  switch (fn) {
    case RootFn::w0: {
      if (target < -kInvE * (1.0 + 1e-15)) throw DomainError("oracle_root: w0 below -1/e");
      if (target == 0.0) return 0.0;
      if (target > 0.0) {
        const double lv = std::log(target);
        const auto g = [&](double w) { return w + std::log(w) - lv; };
        return bisect(g, target / (1.0 + target), std::max(1.0, lv));
      }
      const auto g = [&](double w) { return w * std::exp(w) - target; };
      return bisect(g, -1.0, 0.0);
    }
    case RootFn::wm1: {
      if (!(target < 0.0) || target < -kInvE * (1.0 + 1e-15)) {
        throw DomainError("oracle_root: wm1 needs target in [-1/e, 0)");
      }
      // w + ln(-w) is increasing on w < -1.
      const double lv = std::log(-target);
      const auto g = [&](double w) { return w + std::log(-w) - lv; };
      return bisect(g, 2.0 * lv - 2.0, -1.0);
    }
    case RootFn::x1: {
      if (!(target > 0.0 && target < 1.0)) throw DomainError("oracle_root: z outside (0, 1)");
      const double lz = std::log(target);
      const auto g = [&](double x) { return log_f(x) - lz; };
      return bisect(g, target * kInvE, std::min(target, 1.0));
    }
    case RootFn::x2: {
      if (!(target > 0.0 && target < 1.0)) throw DomainError("oracle_root: z outside (0, 1)");
      const double lz = std::log(target);
      const auto g = [&](double x) { return lz - log_f(x); };
      return bisect(g, 1.0, 2.0 * (1.0 - lz) + 1.0);
    }
  }
  throw DomainError("oracle_root: unknown branch");
}

FdResult fd_derivative(const std::function<double(double)>& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double h2 = 0.5 * h;
  const double d2 = (f(x + h2) - f(x - h2)) / (2.0 * h2);
  const double round = 2.0 * 1.1102230246251565e-16 * std::abs(f(x)) / h2;
  return {d1, 4.0 / 3.0 * std::abs(d1 - d2) + round};
}

}  // namespace gammatail::oracle
