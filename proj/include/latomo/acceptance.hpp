#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latomo {

struct AcceptanceOptions {
  bool quick = false;  // reduced sizes, same checks
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
};

/// Runs the full verification suite (default disk phantom, wedge
/// half-angle pi/4) and prints one PASS/FAIL line per criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& log);

/// 0 when every criterion passed, 2 otherwise.
int acceptance_exit_code(const std::vector<CriterionResult>& results);

}  // namespace latomo
