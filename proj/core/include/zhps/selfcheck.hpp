#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zhps/random_gen.hpp"

namespace zhps {

struct RuleReport {
  std::string rule;
  int cases{0};
  int failures{0};
  double worst_diff{0.0};
  bool passed() const { return failures == 0; }
};

struct SelfCheckOptions {
  std::uint64_t seed{1};
  int cases{100};
  double tol{1e-9};
  /// Name of a rule whose applications get a deliberately wrong scalar;
  /// negative-control hook for the reporting pipeline.
  std::string inject_fault;
};

/// All selfcheckable units in a fixed order: the four path-sum rules, the
/// graphical rules, the eleven base rules, normalization, and the two
/// translation roundtrips.
std::vector<std::string> selfcheck_units();

RuleReport check_unit(const std::string& unit, const SelfCheckOptions& opt);
std::vector<RuleReport> run_selfcheck(const SelfCheckOptions& opt);

} // namespace zhps
