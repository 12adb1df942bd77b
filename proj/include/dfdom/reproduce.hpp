#pragma once

#include <string>
#include <vector>

namespace dfd {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// The acceptance facts, computed from the group files in data_dir.
std::vector<CriterionResult> acceptance_results(const std::string& data_dir);

/// One line per criterion: "PASS 4 coset machinery (1.2 s): ...".
std::string format_results(const std::vector<CriterionResult>& results);

}  // namespace dfd
