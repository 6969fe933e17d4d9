#pragma once

#include <set>
#include <vector>

#include "zhps/poly.hpp"
#include "zhps/scalar.hpp"

namespace zhps {

/// Pure path-sum expression: a set of path variables, input/output signatures
/// (lists of variable indices, repetition allowed), a phase polynomial and a
/// global scalar. Represents scalar * sum over assignments x of
/// e^{2 pi i phi(x)} |x_out><x_in|.
///
/// Invariants kept by the mutators here:
///  - every variable mentioned by phi or a signature is in `vars`;
///  - phi holds no constant term (constants migrate into scalar.phase).
class PurePathSum {
 public:
  PurePathSum() = default;

  /// Identity map on n wires: variables 1..n shared by both signatures.
  static PurePathSum identity(int n);

  const std::set<Var>& vars() const { return vars_; }
  const std::vector<Var>& input_sig() const { return input_sig_; }
  const std::vector<Var>& output_sig() const { return output_sig_; }
  const PhasePoly& phi() const { return phi_; }
  const ScalarFactor& scalar() const { return scalar_; }
  ScalarFactor& scalar() { return scalar_; }

  std::size_t num_vars() const { return vars_.size(); }
  std::size_t arity_in() const { return input_sig_.size(); }
  std::size_t arity_out() const { return output_sig_.size(); }

  Var fresh_var();
  void add_var(Var v);
  void remove_var(Var v);
  bool has_var(Var v) const { return vars_.count(v) != 0; }

  void set_input_sig(std::vector<Var> sig);
  void set_output_sig(std::vector<Var> sig);
  void retarget_signatures(Var from, Var to);
  bool in_signatures(Var v) const;

  /// Adds coeff*monomial to phi; a constant monomial goes to the scalar phase.
  void add_phase(const Phase& coeff, const BoolMonomial& m);
  void add_phase_poly(PhasePoly p);
  /// Replaces phi wholesale (constant term migrated).
  void set_phi(PhasePoly p);
  /// Removes every term of phi mentioning v.
  void drop_terms_with(Var v);

  void set_scalar(const ScalarFactor& s) { scalar_ = s; }

  /// Conjugate transpose: negated phases, swapped signatures, conjugated
  /// scalar phase.
  PurePathSum adjoint() const;

  /// Identity form: both signatures are the same variable list index-wise,
  /// phi is empty, and the scalar is 1 (or any pure phase when
  /// `up_to_phase`). Free variables are not part of an identity form.
  bool is_identity(bool up_to_phase = false) const;

  bool operator==(const PurePathSum& o) const;
  bool operator!=(const PurePathSum& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::set<Var> vars_;
  std::vector<Var> input_sig_, output_sig_;
  PhasePoly phi_;
  ScalarFactor scalar_{};
  Var next_var_{1};
};

/// Converts a functional path-sum (output Boolean polynomials f_j over input
/// variables x_1..x_{n_inputs} and path variables y_1..y_{n_paths}, a phase
/// polynomial and a scalar) into a pure path-sum by introducing one fresh
/// pair (v_j, w_j) per output with coupling terms v_j*w_j/2 + v_j*f_j/2; the
/// scalar picks up 2^{-m}.
PurePathSum purify(const std::vector<BoolPoly>& f, const PhasePoly& phi,
                   const ScalarFactor& lambda, int n_inputs, int n_paths);

/// Sequential composition: applies `a` first, then `b`; requires
/// |a.output_sig| == |b.input_sig|. Variables of b are renamed apart and the
/// joined wire pairs are identified (union-find, so repeated signature
/// entries propagate equalities through both operands).
PurePathSum compose_pathsums(const PurePathSum& a, const PurePathSum& b);

/// Phase polynomial evaluated at a bitstring (bits in ascending variable
/// order over `e.vars()`).
Phase evaluate_assignment(const PhasePoly& phi, const std::vector<Var>& order,
                          const std::vector<bool>& bits);

} // namespace zhps
