#pragma once

#include <optional>
#include <vector>

#include "zhps/diagram.hpp"
#include "zhps/trace.hpp"

namespace zhps {

enum class GRule { HyperPivot, FourierHyperPivot, HyperLocalComp, CaseHyperPivot };

std::string rule_name(GRule r);

struct GMatch {
  GRule rule{GRule::HyperPivot};
  SpiderId u{0};
  SpiderId v{0};   // unused for HyperLocalComp
  HBoxId box{0};   // connecting box; for HyperLocalComp the phase box
  bool conjugate{false}; // hlc: 3/4 phase variant
};

std::vector<GMatch> match_hyper_local_complement(const Diagram& d);
std::vector<GMatch> match_hyper_pivot(const Diagram& d);
std::vector<GMatch> match_fourier_hyper_pivot(const Diagram& d);
std::vector<GMatch> match_case_hyper_pivot(const Diagram& d);

/// Removes an interior spider whose incident boxes are one arity-1 pi/2-phase
/// box plus unlabeled boxes; former neighbor boxes pick up a -pi/2 phase on
/// their remaining spiders and every pair contributes an unlabeled box on the
/// union. Scalar gains sqrt(2) e^{i pi/4}.
Diagram hyper_local_complement(const Diagram& d, const GMatch& m, RewriteTrace* trace = nullptr);

/// Removes two interior spiders joined by an unlabeled arity-2 box when every
/// other incident box is unlabeled and none touches both; each cross pair of
/// boxes leaves an unlabeled box on the union of their remaining spiders.
/// Scalar doubles.
Diagram hyper_pivot(const Diagram& d, const GMatch& m, RewriteTrace* trace = nullptr);

/// Hyper-pivot with arbitrary phases on one side: each phased box spreads
/// over the nonempty subsets of the other side's boxes with phases scaled by
/// (-2)^{|subset|-1}.
Diagram fourier_hyper_pivot(const Diagram& d, const GMatch& m, RewriteTrace* trace = nullptr);

/// Hyper-pivot through the orthogonal (gated/complement-gated) box pattern.
Diagram case_hyper_pivot(const Diagram& d, const GMatch& m, RewriteTrace* trace = nullptr);

/// Subset expansion of a phase box reached through a Hadamard-pair hub: a
/// phase-alpha box on a carrier spider q, q joined by an unlabeled arity-2
/// box to a hub spider p, and p joined by unlabeled boxes to the remaining
/// spiders. Each nonempty subset b of those boxes yields a box with phase
/// alpha*(-2)^{|b|-1} on the union of their spiders; scalar doubles.
/// `box` identifies the phase box. Throws on a zero label.
struct FTMatch {
  HBoxId phase_box{0};
  SpiderId hub{0};
  SpiderId carrier{0};
};
std::vector<FTMatch> match_fourier_transform(const Diagram& d);
Diagram fourier_transform(const Diagram& d, const FTMatch& m, RewriteTrace* trace = nullptr);
/// Convenience: match anchored at a specific phase box.
std::optional<FTMatch> match_fourier_transform_at(const Diagram& d, HBoxId phase_box);

struct DiagramSimplifyPolicy {
  std::vector<GRule> order{GRule::HyperPivot, GRule::FourierHyperPivot, GRule::HyperLocalComp,
                           GRule::CaseHyperPivot};
  bool chain_cleanup{true}; // contract interior degree-2 Hadamard chains
};

/// Greedy interior-spider elimination; terminates because every step strictly
/// decreases the interior spider count.
std::pair<Diagram, RewriteTrace> simplify_diagram(const Diagram& d,
                                                  const DiagramSimplifyPolicy& policy = {});

/// The base rule set. ZS1/ZS2/HS1/HS2/BA1/BA2/A/O rewrite raw terms; M/U/I
/// rewrite hypergraph-form diagrams.
enum class BasicRule { ZS1, ZS2, HS1, HS2, BA1, BA2, M, U, I, A, O };

std::string rule_name(BasicRule r);

struct BasicLoc {
  int g1{-1};
  int g2{-1};
  int aux{-1};
};

std::vector<BasicLoc> match_basic(const RawDiagram& d, BasicRule r);
RawDiagram apply_basic(const RawDiagram& d, BasicRule r, const BasicLoc& loc);

std::vector<BasicLoc> match_basic(const Diagram& d, BasicRule r);
Diagram apply_basic(const Diagram& d, BasicRule r, const BasicLoc& loc);

} // namespace zhps
