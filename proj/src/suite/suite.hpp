#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lpgroup/group.hpp"

namespace lpgroup::suite {

inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr int kCriteria = 9;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // deterministic for a fixed seed
};

/// The groups exercised by the suite, with display names.
std::vector<std::pair<std::string, FiniteGroup>> zoo();

/// The exponents at which reconstruction is exercised.
std::vector<double> zoo_exponents();

CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_all(std::uint64_t seed);

/// "criterion N  PASS  name: detail"
std::string format_line(const CriterionResult& r);

}  // namespace lpgroup::suite
