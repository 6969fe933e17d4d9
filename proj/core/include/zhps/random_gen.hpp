#pragma once

#include <cstdint>
#include <random>

#include "zhps/circuit.hpp"
#include "zhps/diagram.hpp"
#include "zhps/pathsum.hpp"

namespace zhps {

/// Deterministic source for the randomized suites.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  int range(int lo, int hi) { // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(eng);
  }
  bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(eng) < p; }
  /// Exact nonzero phase with a small denominator.
  Phase phase(bool allow_half = true);
  /// Exact phase that is neither 0 nor 1/2 (a Case-style coefficient).
  Phase odd_phase();
};

PurePathSum random_pathsum(Rng& rng, int max_vars = 8, int max_terms = 10);
Diagram random_normalized_diagram(Rng& rng, int max_spiders = 8, int max_boxes = 10);
RawDiagram random_raw_diagram(Rng& rng);
Circuit random_circuit(Rng& rng, int width, int gates,
                       const std::vector<GateKind>& kinds = {GateKind::TOF, GateKind::H,
                                                             GateKind::CNOT, GateKind::T});

/// In-precondition instances for the path-sum rules. Each returns an
/// expression on which the corresponding matcher is guaranteed to fire.
PurePathSum random_elim_instance(Rng& rng);
PurePathSum random_omega_instance(Rng& rng);
PurePathSum random_hh_instance(Rng& rng);
PurePathSum random_case_instance(Rng& rng);

/// In-precondition instances for the graphical rules.
Diagram random_hlc_instance(Rng& rng);
Diagram random_hp_instance(Rng& rng);
Diagram random_fhp_instance(Rng& rng);
Diagram random_chp_instance(Rng& rng);
Diagram random_ft_instance(Rng& rng, int max_fanout = 4);

} // namespace zhps
