#pragma once

#include <optional>
#include <string>

#include "zhps/circuit.hpp"
#include "zhps/oracle.hpp"
#include "zhps/rules.hpp"

namespace zhps {

enum class VerifyStatus { Equal, EqualUpToGlobalPhase, NotProven, Unequal };

struct OracleEvidence {
  std::size_t row{0}, col{0};
  std::complex<double> lhs{}, rhs{};
  double diff{0.0};
};

/// Outcome of an equivalence check. Unequal always carries oracle evidence;
/// Equal carries either a rewrite proof (residual identity form) or an
/// oracle match.
struct Verdict {
  VerifyStatus status{VerifyStatus::NotProven};
  bool by_rewriting{false};
  RewriteTrace trace;
  std::size_t residual_vars{0};
  std::optional<OracleEvidence> evidence;

  int exit_code() const {
    switch (status) {
      case VerifyStatus::Equal:
      case VerifyStatus::EqualUpToGlobalPhase: return 0;
      case VerifyStatus::NotProven: return 1;
      case VerifyStatus::Unequal: return 2;
    }
    return 3;
  }
  std::string status_str() const;
};

struct VerifyOptions {
  CompareMode mode{CompareMode::ExactScalar};
  int oracle_cap{0}; // 0: use the global default
  SimplifyPolicy policy{};
};

/// Simplifies a . adjoint(b); if the fixpoint is the identity form the
/// operands are equal by rewriting alone. Otherwise falls back to the oracle
/// within the cap, else NotProven.
Verdict verify_pathsums(const PurePathSum& a, const PurePathSum& b, const VerifyOptions& opt = {});
Verdict verify_circuits(const Circuit& a, const Circuit& b, const VerifyOptions& opt = {});

/// Diagram-engine variant: simplifies normalize(a . adjoint(b)).
Verdict verify_circuits_diagram(const Circuit& a, const Circuit& b, const VerifyOptions& opt = {});
Verdict verify_diagrams(const Diagram& a, const Diagram& b, const VerifyOptions& opt = {});

} // namespace zhps
