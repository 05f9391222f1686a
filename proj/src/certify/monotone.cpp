#include "gammatail/certify.hpp"

#include "gammatail/error.hpp"
#include "gammatail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gammatail::certify {
namespace {

constexpr int kRefineDepth = 6;

struct Point {
  double a;
  tail::TailEvaluation e;
};

struct Step {
  int sign = 0;  // +1, -1, 0 when uncertified, 2 when both signs certified inside
  double ratio = 0.0;
};

double ratio_of(const Estimate& d) {
  return d.error > 0.0 ? std::abs(d.value) / d.error : std::numeric_limits<double>::infinity();
}

Step classify(const Point& lo, const Point& hi, double margin) {
  const Estimate d = tail::difference(hi.e, lo.e);
  const double r = ratio_of(d);
  if (r > margin) return {d.value > 0.0 ? 1 : -1, r};
  return {0, r};
}

std::vector<double> subdivide(double lo, double hi, int pieces, Scale scale) {
  std::vector<double> out(pieces + 1);
  for (int i = 0; i <= pieces; ++i) {
    const double t = static_cast<double>(i) / pieces;
    out[i] = scale == Scale::log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                                 : lo + t * (hi - lo);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

// Bisects an uncertified interval until every piece has a certified sign or
// the depth budget runs out. Evaluated interior points go to `extra`.
Step refine(const Point& lo, const Point& hi, double c, double margin, Scale scale,
            std::vector<Point>& extra) {
  for (int depth = 1; depth <= kRefineDepth; ++depth) {
    const std::vector<double> grid = subdivide(lo.a, hi.a, 1 << depth, scale);
    std::vector<Point> pts;
    pts.reserve(grid.size());
    pts.push_back(lo);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      pts.push_back({grid[i], tail::evaluate({grid[i], c})});
    }
    pts.push_back(hi);
    bool up = false;
    bool down = false;
    bool open = false;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Step s = classify(pts[i], pts[i + 1], margin);
      if (s.sign == 1) up = true;
      if (s.sign == -1) down = true;
      if (s.sign == 0) open = true;
      if (s.sign != 0) ratio = std::min(ratio, s.ratio);
    }
    if ((up && down) || !open || depth == kRefineDepth) {
      extra.insert(extra.end(), pts.begin() + 1, pts.end() - 1);
      if (up && down) return {2, ratio};
      if (!open) return {up ? 1 : -1, ratio};
      return {0, classify(lo, hi, margin).ratio};
    }
  }
  return {0, 0.0};
}

bool certified_gap(double big, double big_err, double small, double small_err, double margin) {
  const double d = big - small;
  return d > margin * (big_err + small_err + kUnitRoundoff * std::abs(d));
}

std::optional<Witness> witness_from_points(const std::vector<Point>& pts, double margin) {
  if (pts.size() < 3) return std::nullopt;
  for (int pass = 0; pass < 2; ++pass) {
    const bool valley = pass == 0;
    // orient so that the sought extremum is a minimum of s * p
    const double s = valley ? 1.0 : -1.0;
    std::size_t mid = 1;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
      if (s * pts[i].e.value < s * pts[mid].e.value) mid = i;
    }
    std::size_t left = 0;
    for (std::size_t i = 0; i < mid; ++i) {
      if (s * pts[i].e.value > s * pts[left].e.value) left = i;
    }
    std::size_t right = mid + 1;
    for (std::size_t i = mid + 1; i < pts.size(); ++i) {
      if (s * pts[i].e.value > s * pts[right].e.value) right = i;
    }
    const Point& p1 = pts[left];
    const Point& p2 = pts[mid];
    const Point& p3 = pts[right];
    const bool ok = valley ? certified_gap(p1.e.value, p1.e.error, p2.e.value, p2.e.error, margin) &&
                                 certified_gap(p3.e.value, p3.e.error, p2.e.value, p2.e.error, margin)
                           : certified_gap(p2.e.value, p2.e.error, p1.e.value, p1.e.error, margin) &&
                                 certified_gap(p2.e.value, p2.e.error, p3.e.value, p3.e.error, margin);
    if (ok) {
      Witness w;
      w.a1 = p1.a;
      w.a2 = p2.a;
      w.a3 = p3.a;
      w.p1 = p1.e.value;
      w.p2 = p2.e.value;
      w.p3 = p3.e.value;
      w.e1 = p1.e.error;
      w.e2 = p2.e.error;
      w.e3 = p3.e.error;
      w.kind = valley ? "valley" : "peak";
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::increasing: return "increasing";
    case Direction::decreasing: return "decreasing";
    case Direction::non_monotone: return "non_monotone";
    case Direction::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(Scale s) { return s == Scale::log ? "log" : "linear"; }

void ScanSpec::validate() const {
  if (!std::isfinite(a_min) || !std::isfinite(a_max) || !(a_min > 0.0)) {
    throw DomainError("scan: a_min must be positive and finite");
  }
  if (!(a_max > a_min)) throw DomainError("scan: a_max must exceed a_min");
  if (n < 3) throw DomainError("scan: n must be at least 3");
}

std::vector<double> ScanSpec::grid() const {
  validate();
  return subdivide(a_min, a_max, n - 1, scale);
}

double Witness::margin_ratio() const {
  const double g1 = kind == "valley" ? p1 - p2 : p2 - p1;
  const double g3 = kind == "valley" ? p3 - p2 : p2 - p3;
  return std::min(g1 / (e1 + e2), g3 / (e3 + e2));
}

std::vector<tail::TailEvaluation> evaluate_grid(const std::vector<double>& a, double c,
                                                int threads) {
  std::vector<tail::TailEvaluation> out(a.size());
  parallel_for(a.size(), threads, [&](std::size_t i) { out[i] = tail::evaluate({a[i], c}); });
  return out;
}

MonotoneVerdict certify_monotone(double c, const ScanSpec& scan, const Precision& prec,
                                 int threads) {
  prec.validate();
  if (!std::isfinite(c)) throw DomainError("certify: c must be finite");
  const std::vector<double> grid = scan.grid();
  const std::vector<tail::TailEvaluation> evals = evaluate_grid(grid, c, threads);

  MonotoneVerdict v;
  v.c = c;
  v.scan = scan;

  std::vector<Point> pts;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (evals[i].plateau) {
      ++v.plateau_points;
    } else {
      pts.push_back({grid[i], evals[i]});
    }
  }

  const double margin = prec.strict_margin;
  std::vector<Point> extra;
  double certified_ratio = std::numeric_limits<double>::infinity();
  double any_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Step s = classify(pts[i], pts[i + 1], margin);
    if (s.sign == 0) s = refine(pts[i], pts[i + 1], c, margin, scan.scale, extra);
    any_ratio = std::min(any_ratio, s.ratio);
    switch (s.sign) {
      case 1: ++v.increasing_steps; break;
      case -1: ++v.decreasing_steps; break;
      case 2:
        ++v.increasing_steps;
        ++v.decreasing_steps;
        break;
      default:
        ++v.uncertified_steps;
        if (!v.offending) v.offending = Interval{pts[i].a, pts[i + 1].a};
        break;
    }
    if (s.sign != 0) certified_ratio = std::min(certified_ratio, s.ratio);
  }

  if (v.increasing_steps > 0 && v.decreasing_steps > 0) {
    std::vector<Point> all = pts;
    all.insert(all.end(), extra.begin(), extra.end());
    std::sort(all.begin(), all.end(), [](const Point& x, const Point& y) { return x.a < y.a; });
    v.witness = witness_from_points(all, margin);
    if (v.witness) {
      v.direction = Direction::non_monotone;
      v.margin_ratio = v.witness->margin_ratio();
      return v;
    }
    v.direction = Direction::inconclusive;
    v.margin_ratio = any_ratio;
    return v;
  }
  if (v.uncertified_steps > 0 || pts.size() < 2) {
    v.direction = Direction::inconclusive;
    v.margin_ratio = pts.size() < 2 ? 0.0 : any_ratio;
    return v;
  }
  v.direction = v.increasing_steps > 0 ? Direction::increasing : Direction::decreasing;
  v.margin_ratio = certified_ratio;
  return v;
}

Witness find_witness(double c, const Precision& prec, double a_budget) {
  prec.validate();
  if (!(c > -1.0 / 3.0 && c < 0.0)) {
    throw DomainError("find_witness: c must lie strictly inside (-1/3, 0)");
  }
  const double margin = prec.strict_margin;
  auto eval = [c](double a) { return Point{a, tail::evaluate({a, c})}; };

  // Coarse geometric walk from the plateau edge until p climbs back above
  // its running minimum by a certified gap.
  std::vector<Point> walk{eval(-c * (1.0 + 1e-3))};
  std::size_t min_idx = 0;
  std::size_t rise_idx = 0;
  for (double a = walk.front().a * 1.5; a <= a_budget; a *= 1.5) {
    walk.push_back(eval(a));
    const Point& p = walk.back();
    const Point& m = walk[min_idx];
    if (p.e.value < m.e.value) {
      min_idx = walk.size() - 1;
    } else if (min_idx > 0 && certified_gap(p.e.value, p.e.error, m.e.value, m.e.error, margin)) {
      rise_idx = walk.size() - 1;
      break;
    }
  }
  if (rise_idx == 0) {
    throw CertificationError("find_witness: a-budget exhausted before p rose above its minimum");
  }

  // Golden-section refinement of the interior minimiser.
  Point best = walk[min_idx];
  double lo = walk[min_idx - 1].a;
  double hi = walk[min_idx + 1].a;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  Point x1 = eval(hi - g * (hi - lo));
  Point x2 = eval(lo + g * (hi - lo));
  for (int it = 0; it < prec.max_iter && hi - lo > 1e-9 * hi; ++it) {
    if (x1.e.value < x2.e.value) {
      hi = x2.a;
      x2 = x1;
      x1 = eval(hi - g * (hi - lo));
    } else {
      lo = x1.a;
      x1 = x2;
      x2 = eval(lo + g * (hi - lo));
    }
    for (const Point* p : {&x1, &x2}) {
      if (p->e.value < best.e.value) best = *p;
    }
  }

  const Point& p3 = walk[rise_idx];
  if (!certified_gap(p3.e.value, p3.e.error, best.e.value, best.e.error, margin)) {
    throw CertificationError("find_witness: right gap lost after refinement");
  }
  // Left point: approach the plateau edge until the left gap certifies.
  for (int k = 3; k <= 15; ++k) {
    const Point p1 = eval(-c * (1.0 + std::pow(10.0, -k)));
    if (!(p1.a < best.a)) continue;
    if (certified_gap(p1.e.value, p1.e.error, best.e.value, best.e.error, margin)) {
      Witness w;
      w.a1 = p1.a;
      w.a2 = best.a;
      w.a3 = p3.a;
      w.p1 = p1.e.value;
      w.p2 = best.e.value;
      w.p3 = p3.e.value;
      w.e1 = p1.e.error;
      w.e2 = best.e.error;
      w.e3 = p3.e.error;
      return w;
    }
  }
  throw CertificationError("find_witness: could not certify the left gap");
}

}  // namespace gammatail::certify
