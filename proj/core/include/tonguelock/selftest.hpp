#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tonguelock::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Runs the full acceptance checklist, printing one PASS/FAIL line per
// criterion to `out`. Returns the per-criterion results.
std::vector<CriterionResult> run_all(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace tonguelock::selftest
