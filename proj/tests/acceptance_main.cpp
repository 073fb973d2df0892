// Acceptance suite runner: one PASS/FAIL line per criterion; exit code 0
// only when every criterion passes.
#include <cstdint>
#include <cstring>
#include <iostream>

#include "gact/acceptance.hpp"

int main(int argc, char** argv) {
  uint64_t seed = 20260810;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--seed") == 0) seed = std::strtoull(argv[i + 1], nullptr, 10);
  std::cout << "acceptance suite, seed " << seed << "\n";
  auto results = gact::run_acceptance_suite(seed, std::cout);
  int passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return gact::all_passed(results) ? 0 : 1;
}
