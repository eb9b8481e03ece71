#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disclab/pointset.hpp"

namespace disclab {

enum class CheckStatus { Pass, Fail, Skipped };

std::string to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct VerifyOptions {
  int max_order = -1;   // negative: choose by dimension
  int cell_level = -1;  // negative: choose by dimension
  std::uint64_t seed = 20240801;
  std::size_t mc_samples = 20000;
  // Test hook: misreport the localized lower bound so the suite must catch
  // it.  Exercises the failure path end to end.
  bool tamper_localized = false;
};

// Cross-checks every evaluator on one point set: series inequalities that
// hold exactly by construction, truncation brackets against the closed
// forms, and agreement with the independent oracles where their size guards
// allow.  Guarded checks outside their range report Skipped, not Fail.
std::vector<CheckResult> run_checks(const PointSet& ps, const VerifyOptions& opts);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace disclab
