// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include "dfdom/reproduce.hpp"

#include <iostream>

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : DFD_DATA_DIR;
  const auto results = dfd::acceptance_results(dir);
  std::cout << dfd::format_results(results);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (failed ? "FAIL " : "PASS ") << results.size() - static_cast<std::size_t>(failed) << "/"
            << results.size() << " criteria\n";
  return failed ? 1 : 0;
}
