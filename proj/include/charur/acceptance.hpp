#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace charur {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;    // every numeric check held and the runtime stayed in budget
  std::string detail;   // worst observed values against their tolerances
  double seconds = 0.0;
  double budget = 0.0;  // seconds
};

struct AcceptanceOptions {
  int jobs = 1;
  std::vector<int> only;  // criterion ids; empty runs all
  std::uint64_t seed = 42;
};

inline constexpr int kCriterionCount = 12;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// "[PASS] 3  title (1.23 s / 10 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace charur
