#pragma once

#include <functional>
#include <string>
#include <vector>

namespace cmdp::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

std::vector<int> criterion_ids();

/// Runs one criterion. Exceptions are caught and reported as failures.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_suite(const std::vector<int>& ids,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 4 sigma_opt_av optimality (3.21 s / 60 s): ..."
std::string format_line(const CriterionResult& r);

}  // namespace cmdp::acceptance
