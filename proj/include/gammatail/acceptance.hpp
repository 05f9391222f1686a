#pragma once

// The end-to-end acceptance checks, shared by the `verify-all` command and
// the acceptance test executable.

#include "gammatail/precision.hpp"

#include <string>
#include <vector>

namespace gammatail::acceptance {

struct Options {
  Precision prec;
  int threads = 1;
  /// Criterion id whose tolerance is deliberately corrupted (0 = none).
  int inject_fault = 0;
  /// Include the determinism criterion, which re-runs criteria 1-12.
  bool include_determinism = true;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

inline constexpr int kCriterionCount = 13;

std::vector<CriterionResult> run_all(const Options& opts);

/// Runs a single criterion by id (1..13).
CriterionResult run_one(int id, const Options& opts);

/// Canonical JSON document for a result list (no timings, fixed key order).
std::string to_json(const std::vector<CriterionResult>& results);

}  // namespace gammatail::acceptance
