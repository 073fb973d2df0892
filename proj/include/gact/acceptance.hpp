#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace gact {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the full acceptance suite at the given seed. Deterministic given
/// the seed. Prints one PASS/FAIL line per criterion to `out`.
std::vector<CriterionResult> run_acceptance_suite(uint64_t seed,
                                                  std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace gact
