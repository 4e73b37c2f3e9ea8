#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace pg {

struct CheckResult {
  std::string check;
  double value = 0;
  double tolerance = 0;
  bool upper = true;  // pass iff value <= tolerance (else value >= tolerance)
  bool pass = false;
  bool reported = false;  // informational, never fails the criterion
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0;
  double time_limit = 0;
  bool pass() const;
};

struct VerifyOptions {
  bool quick = false;  // fewer Monte Carlo trials; tolerances unchanged
  int threads = 1;
  std::uint64_t seed = 12345;
};

constexpr int kCriteria = 14;

CriterionResult run_criterion(int id, const VerifyOptions &opts);

// orthopoly, measures, kernel, asymptotics, diffusion, all; throws std::invalid_argument otherwise
std::vector<int> suite_criteria(const std::string &suite);

// {"suite", "pass", "criteria": [{"id", "title", "seconds", "pass", "checks": [{check, value, tolerance, pass}]}]}
void write_report_json(std::ostream &os, const std::string &suite, const std::vector<CriterionResult> &results);

}  // namespace pg
