// Acceptance criteria for the library, runnable from the test suite and from
// `wignerlab selftest`.

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace wignerlab::acceptance {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_seconds;
  std::function<Outcome()> run;
};

struct CriterionResult {
  int id;
  std::string name;
  bool passed;  // outcome passed and the runtime stayed under the limit
  std::string detail;
  double seconds;
  double time_limit_seconds;
};

const std::vector<Criterion>& criteria();

CriterionResult run_criterion(const Criterion& c);

/// One line per criterion: "[PASS] 01 name (0.12 s / 5 s): detail".
std::string format_line(const CriterionResult& r);

/// Runs every criterion, printing one line each to `out`. Returns true when
/// all pass.
bool run_all(std::ostream& out);

}  // namespace wignerlab::acceptance
