#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zhps/phase.hpp"

namespace zhps {

/// Path-variable index. Variables keep their ids across rewrites (eliminated
/// ones leave gaps); ids are compacted only when serializing.
using Var = std::int32_t;

/// Assignment of Boolean values to variables.
using Assignment = std::function<bool(Var)>;

/// Multilinear Boolean monomial: a product of distinct variables. The empty
/// product is the constant 1.
class BoolMonomial {
 public:
  BoolMonomial() = default;
  explicit BoolMonomial(std::vector<Var> vars);
  BoolMonomial(std::initializer_list<Var> vars) : BoolMonomial(std::vector<Var>(vars)) {}

  static BoolMonomial one() { return {}; }

  const std::vector<Var>& vars() const { return vars_; }
  bool is_constant() const { return vars_.empty(); }
  std::size_t degree() const { return vars_.size(); }
  bool contains(Var v) const;
  /// Subset test: every variable of this monomial occurs in `m`.
  bool divides(const BoolMonomial& m) const;

  /// Multilinear product (set union; x^2 = x).
  BoolMonomial times(const BoolMonomial& o) const;
  BoolMonomial without(Var v) const;
  BoolMonomial with(Var v) const;

  bool eval(const Assignment& a) const;

  /// Graded lexicographic order, used for map keys and serialization.
  bool operator<(const BoolMonomial& o) const;
  bool operator==(const BoolMonomial& o) const { return vars_ == o.vars_; }
  bool operator!=(const BoolMonomial& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::vector<Var> vars_; // sorted, unique
};

/// XOR of monomials (an F2 polynomial). Set semantics: inserting a monomial
/// twice cancels it.
class BoolPoly {
 public:
  BoolPoly() = default;
  explicit BoolPoly(std::initializer_list<BoolMonomial> ms);

  static BoolPoly zero() { return {}; }

  void xor_mono(const BoolMonomial& m);
  BoolPoly operator^(const BoolPoly& o) const;
  /// AND product, expanded multilinearly over F2.
  BoolPoly times(const BoolPoly& o) const;

  bool is_zero() const { return monos_.empty(); }
  std::size_t size() const { return monos_.size(); }
  const std::set<BoolMonomial>& monomials() const { return monos_; }

  bool eval(const Assignment& a) const;

  std::set<Var> vars_used() const;
  bool operator==(const BoolPoly& o) const { return monos_ == o.monos_; }

  std::string str() const;

 private:
  std::set<BoolMonomial> monos_;
};

/// Multilinear polynomial with integer coefficients, the codomain of the
/// lifting operator. Kept separate from PhasePoly because liftings must not
/// be reduced mod 1 before they are consumed.
class IntPoly {
 public:
  IntPoly() = default;

  void add(const BoolMonomial& m, std::int64_t c);
  IntPoly times_mono(const BoolMonomial& m) const;
  IntPoly times(const IntPoly& o) const;
  IntPoly scaled(std::int64_t k) const;
  IntPoly operator+(const IntPoly& o) const;

  std::int64_t eval(const Assignment& a) const;
  const std::map<BoolMonomial, std::int64_t>& terms() const { return terms_; }
  bool operator==(const IntPoly& o) const { return terms_ == o.terms_; }

  std::string str() const;

 private:
  std::map<BoolMonomial, std::int64_t> terms_;
};

/// Lifting of a Boolean polynomial: the integer multilinear polynomial that
/// agrees with it on Boolean inputs. Inductive definition: a single monomial
/// lifts to itself and P xor Q lifts to P+Q-2PQ.
IntPoly lift(const BoolPoly& q);

/// Real-coefficient multilinear phase polynomial: monomial -> Phase, with
/// coefficients reduced mod 1 and zero coefficients dropped.
class PhasePoly {
 public:
  PhasePoly() = default;

  void add_term(const BoolMonomial& m, const Phase& c);
  PhasePoly operator+(const PhasePoly& o) const;

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<BoolMonomial, Phase>& terms() const { return terms_; }

  bool contains_var(Var v) const;
  std::set<Var> vars_used() const;

  /// Coefficient of a monomial (zero phase when absent).
  Phase coeff(const BoolMonomial& m) const;

  /// Sum of coefficients whose monomials evaluate to 1, reduced mod 1.
  Phase eval(const Assignment& a) const;

  /// Splits off the terms containing v: returns (S, T) with this = v*S + T,
  /// where S has v removed from each monomial.
  std::pair<PhasePoly, PhasePoly> split_on(Var v) const;

  /// Renames variable `from` to `to` in every monomial (multilinear merge).
  PhasePoly renamed(Var from, Var to) const;

  /// Extracts the constant-monomial coefficient, removing it.
  Phase take_constant();

  bool operator==(const PhasePoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const PhasePoly& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::map<BoolMonomial, Phase> terms_;
};

/// alpha * lift(q), computed term-by-term from the closed form: for each
/// nonempty subset b of q's monomials the union monomial receives coefficient
/// alpha * (-2)^{|b|-1}. Subset sizes whose coefficient has become an exact
/// integer are skipped (they stay integral from there on).
PhasePoly scale_lift(const Phase& alpha, const BoolPoly& q);

/// Canonical phase-polynomial form of alpha * f for a Boolean polynomial f;
/// same closed form as scale_lift.
PhasePoly canonicalize(const Phase& alpha, const BoolPoly& f);

/// Substitutes the integer polynomial p for variable y in r: with
/// r = y*S + T the result is expand(p*S) + T, products taken over exact
/// values and reduced mod 1 at insertion.
PhasePoly substitute(const PhasePoly& r, Var y, const IntPoly& p);

} // namespace zhps
