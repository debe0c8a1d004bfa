#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "algpaths/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = algpaths::kDefaultSuiteSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  bool all = true;
  for (int id = 1; id <= algpaths::kCriterionCount; ++id) {
    const auto start = std::chrono::steady_clock::now();
    const auto results = algpaths::run_acceptance(seed, {}, {id});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& r : results) {
      std::printf("%s criterion %d (%s): %s [%.1fs]\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.summary.c_str(), secs);
      std::fflush(stdout);
      all = all && r.passed;
    }
  }
  return all ? 0 : 1;
}
