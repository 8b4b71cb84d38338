#pragma once

#include <string>
#include <vector>

namespace k3cusps {

// One entry of the bundled verification suite. Every check is exact; there
// are no tolerances anywhere, a criterion either reproduces its value or not.
struct CriterionResult {
  int id = 0;
  std::string name;     // short slug, stable across versions
  std::string anchor;   // the mathematical claim being verified
  bool pass = false;
  std::string details;
  long long elapsed_ms = 0;
};

// Runs the full suite (nine criteria) in order.
std::vector<CriterionResult> run_acceptance_suite();

}  // namespace k3cusps
