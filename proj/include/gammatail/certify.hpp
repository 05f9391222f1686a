#pragma once

// Numerical certification of monotonicity claims about p_c(a), the ratio
// chain behind the -1/3 threshold, the mean inequalities, and the
// small-epsilon expansion of the forward difference.
//
// A sign is "certified" only when |difference| > strict_margin * error bound.

#include "gammatail/precision.hpp"
#include "gammatail/tailprob.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gammatail::certify {

enum class Scale { linear, log };

struct ScanSpec {
  double a_min = 0.01;
  double a_max = 200.0;
  int n = 400;
  Scale scale = Scale::log;

  void validate() const;
  std::vector<double> grid() const;
};

enum class Direction { increasing, decreasing, non_monotone, inconclusive };

std::string_view to_string(Direction d);
std::string_view to_string(Scale s);

struct Witness {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  /// "valley" for p1 > p2 < p3, "peak" for p1 < p2 > p3.
  std::string kind = "valley";

  /// Smaller of the two gaps divided by its combined error bound.
  double margin_ratio() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct MonotoneVerdict {
  Direction direction = Direction::inconclusive;
  double c = 0.0;
  ScanSpec scan;
  std::optional<Witness> witness;
  /// Smallest |difference| / error bound among the intervals backing the
  /// verdict (witness gaps for non_monotone).
  double margin_ratio = 0.0;
  /// Grid points with a + c <= 0, where p is identically 1; excluded.
  int plateau_points = 0;
  int increasing_steps = 0;
  int decreasing_steps = 0;
  int uncertified_steps = 0;
  /// First interval whose sign could not be certified.
  std::optional<Interval> offending;
};

/// Tail evaluations on a grid, in grid order, on up to `threads` workers.
std::vector<tail::TailEvaluation> evaluate_grid(const std::vector<double>& a, double c,
                                                int threads);

MonotoneVerdict certify_monotone(double c, const ScanSpec& scan, const Precision& prec,
                                 int threads = 1);

/// Searches for a certified valley a1 < a2 < a3 for c in (-1/3, 0) with all
/// shape parameters at most `a_budget`. Throws CertificationError if the
/// budget is exhausted.
Witness find_witness(double c, const Precision& prec, double a_budget = 1e6);

// ---------------------------------------------------------------------------
// Threshold chain
// ---------------------------------------------------------------------------

enum class Stage { lambda, f1_g1, f2_g2, r3 };

std::string_view to_string(Stage s);

/// Stage ratio plus 1/3, evaluated without cancellation near y = 1.
double stage_shifted(Stage s, double y);
/// Stage ratio from the explicit formulas in y (accurate away from y = 1).
double stage_direct(Stage s, double y);
/// Analytic derivative of r3: 2 (y^2 - 1) / (1 + 4y + y^2)^2.
double r3_derivative(double y);

struct StageReport {
  Stage stage = Stage::lambda;
  bool increasing = false;
  double margin_ratio = 0.0;
  /// Stage value at y = 1 + 1e-8.
  double limit_value = 0.0;
  bool limit_ok = false;
  std::optional<double> failed_at;
};

struct ThresholdChainReport {
  std::vector<StageReport> stages;
  bool r3_derivative_positive = false;
  double r3_derivative_max_rel_error = 0.0;
  /// Largest |shifted - 1/3 - direct| over grid points with y >= 1.5.
  double direct_form_max_abs_diff = 0.0;
  /// Largest relative mismatch of f'/g' against the next stage ratio.
  double derivative_ratio_max_rel_error = 0.0;
  bool ok = false;
};

ThresholdChainReport check_threshold_chain(const std::vector<double>& y_grid, const Precision& prec);

// ---------------------------------------------------------------------------
// Mean chain
// ---------------------------------------------------------------------------

struct MeanGaps {
  double geo = 0.0;
  double log_mean = 0.0;
  double g_tilde = 0.0;
  double arith = 0.0;
  double l_minus_g = 0.0;
  double gt_minus_l = 0.0;
  double a_minus_gt = 0.0;
  /// Relative error bound shared by the three gaps.
  double gap_rel_error = 0.0;
};

/// Means of 0 < x < y and their consecutive gaps from cancellation-free forms.
MeanGaps mean_gaps(double x, double y);

/// Sign of L - G~_k where G~_k uses factor k in place of 1/3, via
/// lambda(y/x) + 1/3 - (1/3 - k). Negative means L < G~_k.
double probe_gap(double x, double y, double k);

struct MeanChainReport {
  std::size_t pairs = 0;
  std::size_t failures = 0;
  double min_margin_ratio = 0.0;
  std::optional<std::pair<double, double>> first_failure;
  double probe_factor = 0.0;
  bool probe_violation_found = false;
  double probe_ratio = 0.0;
  bool ok = false;
};

MeanChainReport check_mean_chain(const std::vector<std::pair<double, double>>& pairs,
                                 const Precision& prec, double probe_factor = 0.332);

// ---------------------------------------------------------------------------
// Small-epsilon expansion
// ---------------------------------------------------------------------------

/// g(eps, z) = 1 - (1 - b eps)(1 - z eps)^{1/eps - b - 1} e^z.
double asymptotic_integrand(double eps, double z, double b);

struct AsymptoticReport {
  double c = 0.0;
  double b = 0.0;
  std::vector<double> eps;
  /// 2 * int_0^1 g(eps, z) dz per eps.
  std::vector<double> integral;
  double slope = 0.0;
  double curvature = 0.0;
  double expected_slope = 0.0;
  double slope_rel_error = 0.0;
  double max_residual = 0.0;
  bool positive = false;
  bool residual_ok = false;
  /// Largest relative mismatch between int g and the normalised forward
  /// difference of p_c at a = 1/eps - b.
  double identity_max_rel_error = 0.0;
  bool ok = false;
};

AsymptoticReport check_asymptotic(double c, const std::vector<double>& eps,
                                  const Precision& prec);

}  // namespace gammatail::certify
