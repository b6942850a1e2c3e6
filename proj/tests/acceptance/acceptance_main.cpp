#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fiveprime/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite: one PASS/FAIL line per criterion"};
  std::vector<int> only;
  fiveprime::AcceptanceOptions options;
  app.add_option("--only", only, "criterion ids (default all)")->check(CLI::Range(1, fiveprime::kCriterionCount));
  app.add_option("--threads", options.threads)->capture_default_str();
  app.add_option("--seed", options.seed)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  auto results = fiveprime::run_acceptance(options, only, &std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << results.size() - failed << '/' << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
