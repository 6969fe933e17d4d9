#pragma once

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zhps/phase.hpp"
#include "zhps/scalar.hpp"

namespace zhps {

/// H-box label. A PhaseLabel alpha stands for e^{2 pi i alpha} (exponentiated
/// H-box); the conventional unlabeled box is PhaseLabel(1/2), i.e. -1.
/// GeneralLabel carries an arbitrary complex parameter.
class HLabel {
 public:
  HLabel() : phase_(Phase::half()), is_phase_(true) {}
  static HLabel from_phase(const Phase& p) {
    HLabel l;
    l.is_phase_ = true;
    l.phase_ = p;
    return l;
  }
  static HLabel general(std::complex<double> a) {
    HLabel l;
    l.is_phase_ = false;
    l.value_ = a;
    return l;
  }
  static HLabel minus_one() { return from_phase(Phase::half()); }

  bool is_phase() const { return is_phase_; }
  const Phase& phase() const {
    if (!is_phase_) throw Error("phase() on a general H-box label");
    return phase_;
  }
  std::complex<double> value() const { return is_phase_ ? phase_.to_complex() : value_; }

  bool is_unlabeled() const { return is_phase_ && phase_ == Phase::half(); }
  /// Label exactly 1 (the all-ones tensor).
  bool is_one() const;

  /// Converts a unit-modulus general label with a recognizable rational
  /// argument to a phase label; small denominators only.
  static HLabel from_complex(std::complex<double> a);

  HLabel times(const HLabel& o) const;
  /// Label raised to an integer power (requires nonzero value for k < 0).
  HLabel pow_int(std::int64_t k) const;

  bool operator==(const HLabel& o) const;
  std::string str() const;

 private:
  Phase phase_{};
  std::complex<double> value_{0.0, 0.0};
  bool is_phase_{true};
};

/// Generator kinds usable in a raw ZH term. Identity and swap are pure
/// wiring, so they have constructors on RawDiagram rather than node kinds.
enum class GenKind { ZSpider, HBox, XSpider, Not, Hadamard };

/// Raw ZH term: a list of generators, a wiring of their ports, and ordered
/// boundary lists. Each wire id occurs exactly twice over all generator ports
/// and boundary slots.
class RawDiagram {
 public:
  struct Gen {
    GenKind kind{GenKind::ZSpider};
    HLabel label{};
    std::vector<int> in_wires, out_wires;
    std::size_t arity() const { return in_wires.size() + out_wires.size(); }
  };

  RawDiagram() = default;

  static RawDiagram identity(int n);
  static RawDiagram wire_swap();

  int fresh_wire() { return next_wire_++; }
  int add_gen(GenKind kind, std::vector<int> in, std::vector<int> out, HLabel label = HLabel());

  const std::vector<Gen>& gens() const { return gens_; }
  std::vector<Gen>& mutable_gens() { return gens_; }
  const std::vector<int>& input_wires() const { return input_wires_; }
  const std::vector<int>& output_wires() const { return output_wires_; }
  std::vector<int>& mutable_inputs() { return input_wires_; }
  std::vector<int>& mutable_outputs() { return output_wires_; }
  const ScalarFactor& scalar() const { return scalar_; }
  ScalarFactor& scalar() { return scalar_; }

  std::size_t arity_in() const { return input_wires_.size(); }
  std::size_t arity_out() const { return output_wires_.size(); }

  /// Total number of distinct wires.
  std::size_t wire_count() const;

  /// Checks every wire occurs exactly twice across ports and boundary.
  void check_wiring() const;

 private:
  std::vector<Gen> gens_;
  std::vector<int> input_wires_, output_wires_;
  ScalarFactor scalar_{};
  int next_wire_{0};

  friend RawDiagram compose_seq(const RawDiagram&, const RawDiagram&);
  friend RawDiagram compose_par(const RawDiagram&, const RawDiagram&);
};

/// Sequential composition: joins d1's outputs to d2's inputs in order;
/// scalars multiply. Closed loops created by the join contribute a factor 2
/// each.
RawDiagram compose_seq(const RawDiagram& d1, const RawDiagram& d2);

/// Parallel composition (tensor product): boundary lists concatenate.
RawDiagram compose_par(const RawDiagram& d1, const RawDiagram& d2);

using SpiderId = int;
using HBoxId = int;

/// Hypergraph-like ZH-diagram: Z-spiders as vertices, H-boxes as labeled
/// hyperedges, ordered boundary maps, and a tracked global scalar.
class Diagram {
 public:
  struct HBox {
    HLabel label{};
    std::set<SpiderId> neighbors;
  };

  Diagram() = default;

  SpiderId add_spider();
  SpiderId add_spider_with_id(SpiderId id);
  /// Adds a phase term as an H-box: fuses into an existing box with the same
  /// neighborhood, folds empty neighborhoods into the scalar, and removes
  /// boxes whose label becomes 1.
  void add_phase_term(const Phase& coeff, const std::set<SpiderId>& neighbors);
  HBoxId add_hbox(const HLabel& label, const std::set<SpiderId>& neighbors);
  void remove_hbox(HBoxId id);
  void remove_spider(SpiderId id);

  const std::set<SpiderId>& spiders() const { return spiders_; }
  const std::map<HBoxId, HBox>& hboxes() const { return hboxes_; }
  const std::vector<SpiderId>& inputs() const { return inputs_; }
  const std::vector<SpiderId>& outputs() const { return outputs_; }
  const ScalarFactor& scalar() const { return scalar_; }
  ScalarFactor& scalar() { return scalar_; }

  void set_inputs(std::vector<SpiderId> in);
  void set_outputs(std::vector<SpiderId> out);
  void set_scalar(const ScalarFactor& s) { scalar_ = s; }

  bool on_boundary(SpiderId s) const;
  /// Ids of the H-boxes incident to a spider.
  std::vector<HBoxId> boxes_on(SpiderId s) const;
  std::optional<HBoxId> find_box_with_neighbors(const std::set<SpiderId>& nbrs) const;

  /// The five normal-form conditions; returns an explanation of the first
  /// violation, or nullopt when all hold. Conditions (1)-(3) are structural
  /// in this representation, so this checks referential integrity plus the
  /// nonempty-neighborhood and distinct-neighborhood conditions.
  std::optional<std::string> validate() const;

  /// Identity diagram: no H-boxes, equal input/output lists covering every
  /// spider exactly once each, scalar 1 (or a pure phase when `up_to_phase`).
  bool is_identity(bool up_to_phase = false) const;

  /// Structural re-ingestion as a raw term (one generator per spider/box).
  RawDiagram to_raw() const;

  /// Conjugate transpose: labels conjugated, boundary lists swapped.
  Diagram adjoint() const;

  std::string str() const;

 private:
  std::set<SpiderId> spiders_;
  std::map<HBoxId, HBox> hboxes_;
  std::vector<SpiderId> inputs_, outputs_;
  ScalarFactor scalar_{};
  SpiderId next_spider_{1};
  HBoxId next_hbox_{1};
};

/// In-progress hyperedge with a neighbor multiset, used while normalizing.
struct MultiEdge {
  HLabel label{};
  std::vector<SpiderId> neighbors; // may contain duplicates
};

/// Parallel-edge reduction: collapses duplicate occurrences of `spider` in
/// the edge's neighbor list down to one (the tensor is unchanged because
/// Boolean indices are idempotent under products).
void reduce_parallel(MultiEdge& edge, SpiderId spider);

/// Lemma-style normalization of a raw term into hypergraph-like form:
/// expands derived generators, cancels double Hadamards introduced by the
/// expansion, fuses spiders, detaches boundary and box-box wires with fresh
/// identity spiders, collapses parallel edges and fuses duplicate
/// neighborhoods. Semantics are preserved exactly, scalar included.
Diagram normalize(const RawDiagram& d);

/// Isomorphism respecting labels, neighborhoods, boundary order and the
/// scalar. Canonical refinement with a backtracking fallback.
bool iso_equal(const Diagram& a, const Diagram& b);

} // namespace zhps
