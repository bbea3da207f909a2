#pragma once

// Seeded verification suites behind `cohspeed verify <suite>`.
//
// Every check is reported as value <= limit: gaps are |a - b| against a
// tolerance and inequalities lhs <= rhs are reported as lhs - rhs against
// the tolerance. Trials fan out over OpenMP; each trial draws from its own
// seed, so results do not depend on the thread count.

#include <cstdint>
#include <string>
#include <vector>

namespace cohspeed {

struct SuiteOptions {
  std::uint64_t seed = 7;
  int dim = 0;      // 0: the suite's own dimension range
  int trials = 0;   // 0: the suite's default count
  int jobs = 0;     // 0: OpenMP default
  double tol = 0.0; // 0: the suite's default tolerance per check
};

struct CheckRow {
  std::string check;
  std::int64_t trial = 0;
  int dim = 0;
  double value = 0.0;
  double limit = 0.0;
  bool passed = false;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckRow> rows;

  bool passed() const;
  std::size_t failures() const;
  /// Largest value among rows of `check` (-inf if none).
  double max_value(const std::string& check) const;
};

const std::vector<std::string>& suite_names();

/// Throws UnknownSuite for names outside suite_names().
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);

/// Deterministic per-trial seed (splitmix64 over base, trial and stream).
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial, std::uint64_t stream = 0);

}  // namespace cohspeed
