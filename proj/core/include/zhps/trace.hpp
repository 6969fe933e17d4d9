#pragma once

#include <string>
#include <vector>

#include "zhps/scalar.hpp"

namespace zhps {

/// One rewrite step: which rule fired, which variables (or spiders) were
/// removed, the multiplicative scalar delta, and the live-count before/after.
struct TraceStep {
  std::string rule;
  std::vector<int> removed;
  ScalarFactor scalar_delta{};
  std::size_t count_before{0};
  std::size_t count_after{0};
};

/// Ordered log of rule applications, for auditability and replay.
struct RewriteTrace {
  std::vector<TraceStep> steps;

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
  void add(TraceStep s) { steps.push_back(std::move(s)); }
};

} // namespace zhps
