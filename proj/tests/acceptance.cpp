// Acceptance suite: one pass/fail line per criterion, exact values only.
// Exits nonzero when any criterion fails.

#include <cstdio>

#include "k3cusps/reproduce.hpp"

int main() {
  auto results = k3cusps::run_acceptance_suite();
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s  criterion %d  %-26s [%s]  (%lld ms)\n",
                r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.anchor.c_str(), r.elapsed_ms);
    if (!r.pass) {
      std::printf("      %s\n", r.details.c_str());
      ++failed;
    }
  }
  std::printf("%s %zu/%zu\n", failed == 0 ? "PASS" : "FAIL",
              results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
