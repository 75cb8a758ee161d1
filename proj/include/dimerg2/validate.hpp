#pragma once

#include <string>
#include <vector>

// Oracle and property suites runnable from the CLI. Failures are report
// entries, not exceptions.
namespace dimerg2::validate {

struct CheckResult {
  std::string suite;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// suite in {specialfns, couplings, dynamics, zeros, all}.
std::vector<CheckResult> run_suite(const std::string& suite);

std::string report_text(const std::vector<CheckResult>& results);
std::string report_json(const std::vector<CheckResult>& results);

}  // namespace dimerg2::validate
