#pragma once

#include <optional>
#include <vector>

#include "zhps/pathsum.hpp"
#include "zhps/trace.hpp"

namespace zhps {

enum class PSRule { Elim, HH, Omega, Case };

std::string rule_name(PSRule r);

/// A bound rule occurrence. Fields beyond (rule, y0, y1) are only populated
/// where the rule needs them.
struct PSMatch {
  PSRule rule{PSRule::Elim};
  Var y0{0};
  Var y1{0};
  bool conjugate{false};     // omega: the 3/4-coefficient variant
  bool retarget{false};      // hh: y1 sits in a signature, Q is one variable
  Var retarget_to{0};        // hh: that variable
  BoolPoly q;                // omega/hh/case: Q
  BoolPoly q_prime;          // case: Q'
  BoolMonomial x_mono;       // case: the gating monomial
  std::vector<std::pair<Phase, BoolMonomial>> alpha_terms; // case: y0-side non-1/2 terms
  std::vector<std::pair<Phase, BoolMonomial>> beta_pairs;  // case: y1-side base terms
};

/// Matchers enumerate occurrences deterministically (ascending variable ids).
std::vector<PSMatch> match_elim(const PurePathSum& e);
std::vector<PSMatch> match_omega(const PurePathSum& e);
std::vector<PSMatch> match_hh(const PurePathSum& e);
std::vector<PSMatch> match_case(const PurePathSum& e);

std::vector<PSMatch> match_rule(const PurePathSum& e, PSRule r);

PurePathSum apply_elim(const PurePathSum& e, const PSMatch& m, RewriteTrace* trace = nullptr);
PurePathSum apply_omega(const PurePathSum& e, const PSMatch& m, RewriteTrace* trace = nullptr);
PurePathSum apply_hh(const PurePathSum& e, const PSMatch& m, RewriteTrace* trace = nullptr);
PurePathSum apply_case(const PurePathSum& e, const PSMatch& m, RewriteTrace* trace = nullptr);

PurePathSum apply_rule(const PurePathSum& e, const PSMatch& m, RewriteTrace* trace = nullptr);

/// Rule preference order for the simplification loop.
struct SimplifyPolicy {
  std::vector<PSRule> order{PSRule::Elim, PSRule::HH, PSRule::Omega, PSRule::Case};
};

/// Applies the first available match in policy order until no rule matches.
/// Terminates because every application strictly decreases the variable
/// count.
std::pair<PurePathSum, RewriteTrace> simplify(const PurePathSum& e, const SimplifyPolicy& policy = {});

namespace detail {

/// Shared matcher for the Case orthogonality structure. Inputs are the
/// non-1/2 coefficient terms attached to y0 and y1 (with y0/y1 already
/// stripped from the monomials). On success yields the gating monomial, the
/// base terms of the complement pairs, and the alpha terms.
struct CaseStructure {
  BoolMonomial gate;
  std::vector<std::pair<Phase, BoolMonomial>> alpha_terms;
  std::vector<std::pair<Phase, BoolMonomial>> beta_pairs;
};

std::optional<CaseStructure> detect_case_structure(
    const std::vector<std::pair<Phase, BoolMonomial>>& y0_side,
    const std::vector<std::pair<Phase, BoolMonomial>>& y1_side);

} // namespace detail

} // namespace zhps
