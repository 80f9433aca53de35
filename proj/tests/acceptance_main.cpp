#include <algorithm>
#include <iostream>
#include <thread>

#include "sdwave/verification/acceptance.hpp"

// One pass/fail line per acceptance criterion; exit status 1 if any fails.
int main() {
  sdw::verification::AcceptOptions options;
  options.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int passed = 0;
  const auto results = sdw::verification::run_acceptance(options);
  for (const auto &r : results) {
    std::cout << sdw::verification::format_result(r) << "\n";
    passed += r.passed ? 1 : 0;
  }
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}
