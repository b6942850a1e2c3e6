#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fiveprime {

inline constexpr int kCriterionCount = 10;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct AcceptanceOptions {
  unsigned threads = 1;
  std::uint64_t seed = 20240601;
};

/// Runs one criterion (1..10). Exceptions are caught and reported as failures.
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// Runs the listed criteria (all when empty), printing one line per criterion to `out` if given.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, const std::vector<int>& only = {},
                                            std::ostream* out = nullptr);

std::string format_result(const CriterionResult& r);

}  // namespace fiveprime
