// oracle_suites.hpp - seeded validation suites comparing every closed form
// against an independent oracle (adaptive quadrature, Monte-Carlo sampling,
// or the deterministic improvement). Shared by the command-line front end
// and the acceptance tests.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mobo {

struct OracleSuiteOptions {
  int instances = 50;
  int draws = 100000;
  std::uint64_t seed = 12345;
};

struct OracleSuiteReport {
  std::string suite;
  int checked = 0;
  int failed = 0;
  double worst = 0.0;  // worst deviation in the suite's own units
  std::vector<std::string> lines;

  bool passed() const { return failed == 0 && checked > 0; }
};

// Suites: integrals, evi, pnd, hv, truncation.
OracleSuiteReport run_oracle_suite(const std::string& suite,
                                   const OracleSuiteOptions& opts);

std::vector<std::string> oracle_suite_names();

}  // namespace mobo
