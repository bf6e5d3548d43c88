#pragma once

#include <string>
#include <vector>

namespace scissors {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double limit = 0;  // seconds
  std::string detail;
};

CriterionResult run_criterion(int id);
// "fast" or "full"; throws UsageError otherwise.
std::vector<int> criteria_for_level(const std::string& level);
std::string format_result(const CriterionResult& r);

}  // namespace scissors
