#pragma once

// The acceptance battery: ten seeded property experiments, each reduced to a
// single pass/fail verdict plus plot-ready data.

#include <cstdint>
#include <string>
#include <vector>

#include "algpaths/serialize.hpp"

namespace algpaths {

inline constexpr std::uint64_t kDefaultSuiteSeed = 20260101;
inline constexpr int kCriterionCount = 10;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;
  Json data;
};

/// Runs the criteria listed in `only` (all of them when empty). Library
/// errors inside a criterion are caught and reported as a failure.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const ToleranceConfig& cfg = {},
                                            const std::vector<int>& only = {});

Json to_json(const CriterionResult& r);

/// "[PASS] 3 polygonal-two-segments: ..." lines.
std::string format_table(const std::vector<CriterionResult>& results);

}  // namespace algpaths
