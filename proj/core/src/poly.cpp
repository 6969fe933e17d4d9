#include "zhps/poly.hpp"

#include <algorithm>

namespace zhps {

BoolMonomial::BoolMonomial(std::vector<Var> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

bool BoolMonomial::contains(Var v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

bool BoolMonomial::divides(const BoolMonomial& m) const {
  return std::includes(m.vars_.begin(), m.vars_.end(), vars_.begin(), vars_.end());
}

BoolMonomial BoolMonomial::times(const BoolMonomial& o) const {
  std::vector<Var> u;
  u.reserve(vars_.size() + o.vars_.size());
  std::set_union(vars_.begin(), vars_.end(), o.vars_.begin(), o.vars_.end(), std::back_inserter(u));
  BoolMonomial r;
  r.vars_ = std::move(u);
  return r;
}

BoolMonomial BoolMonomial::without(Var v) const {
  BoolMonomial r = *this;
  auto it = std::find(r.vars_.begin(), r.vars_.end(), v);
  if (it != r.vars_.end()) r.vars_.erase(it);
  return r;
}

BoolMonomial BoolMonomial::with(Var v) const {
  return times(BoolMonomial({v}));
}

bool BoolMonomial::eval(const Assignment& a) const {
  for (Var v : vars_)
    if (!a(v)) return false;
  return true;
}

bool BoolMonomial::operator<(const BoolMonomial& o) const {
  if (vars_.size() != o.vars_.size()) return vars_.size() < o.vars_.size();
  return vars_ < o.vars_;
}

std::string BoolMonomial::str() const {
  if (vars_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) s += ".";
    s += "x" + std::to_string(vars_[i]);
  }
  return s;
}

BoolPoly::BoolPoly(std::initializer_list<BoolMonomial> ms) {
  for (const auto& m : ms) xor_mono(m);
}

void BoolPoly::xor_mono(const BoolMonomial& m) {
  auto it = monos_.find(m);
  if (it == monos_.end())
    monos_.insert(m);
  else
    monos_.erase(it);
}

BoolPoly BoolPoly::operator^(const BoolPoly& o) const {
  BoolPoly r = *this;
  for (const auto& m : o.monos_) r.xor_mono(m);
  return r;
}

BoolPoly BoolPoly::times(const BoolPoly& o) const {
  BoolPoly r;
  for (const auto& a : monos_)
    for (const auto& b : o.monos_) r.xor_mono(a.times(b));
  return r;
}

bool BoolPoly::eval(const Assignment& a) const {
  bool acc = false;
  for (const auto& m : monos_) acc ^= m.eval(a);
  return acc;
}

std::set<Var> BoolPoly::vars_used() const {
  std::set<Var> s;
  for (const auto& m : monos_) s.insert(m.vars().begin(), m.vars().end());
  return s;
}

std::string BoolPoly::str() const {
  if (monos_.empty()) return "0";
  std::string s;
  for (auto it = monos_.begin(); it != monos_.end(); ++it) {
    if (it != monos_.begin()) s += " xor ";
    s += it->str();
  }
  return s;
}

void IntPoly::add(const BoolMonomial& m, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IntPoly IntPoly::times_mono(const BoolMonomial& m) const {
  IntPoly r;
  for (const auto& [mono, c] : terms_) r.add(mono.times(m), c);
  return r;
}

IntPoly IntPoly::times(const IntPoly& o) const {
  IntPoly r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add(ma.times(mb), ca * cb);
  return r;
}

IntPoly IntPoly::scaled(std::int64_t k) const {
  IntPoly r;
  for (const auto& [m, c] : terms_) r.add(m, c * k);
  return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  IntPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add(m, c);
  return r;
}

std::int64_t IntPoly::eval(const Assignment& a) const {
  std::int64_t acc = 0;
  for (const auto& [m, c] : terms_)
    if (m.eval(a)) acc += c;
  return acc;
}

std::string IntPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it != terms_.begin()) s += " + ";
    s += std::to_string(it->second) + "*" + it->first.str();
  }
  return s;
}

IntPoly lift(const BoolPoly& q) {
  // Fold the inductive rule over the monomials: L' = L + m - 2Lm.
  IntPoly acc;
  for (const auto& m : q.monomials()) {
    IntPoly mono;
    mono.add(m, 1);
    IntPoly cross = acc.times_mono(m).scaled(-2);
    acc = acc + mono + cross;
  }
  return acc;
}

void PhasePoly::add_term(const BoolMonomial& m, const Phase& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PhasePoly PhasePoly::operator+(const PhasePoly& o) const {
  PhasePoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

bool PhasePoly::contains_var(Var v) const {
  for (const auto& [m, c] : terms_)
    if (m.contains(v)) return true;
  return false;
}

std::set<Var> PhasePoly::vars_used() const {
  std::set<Var> s;
  for (const auto& [m, c] : terms_) s.insert(m.vars().begin(), m.vars().end());
  return s;
}

Phase PhasePoly::coeff(const BoolMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Phase::zero() : it->second;
}

Phase PhasePoly::eval(const Assignment& a) const {
  Phase acc;
  for (const auto& [m, c] : terms_)
    if (m.eval(a)) acc = acc + c;
  return acc;
}

std::pair<PhasePoly, PhasePoly> PhasePoly::split_on(Var v) const {
  PhasePoly s, t;
  for (const auto& [m, c] : terms_) {
    if (m.contains(v))
      s.add_term(m.without(v), c);
    else
      t.add_term(m, c);
  }
  return {s, t};
}

PhasePoly PhasePoly::renamed(Var from, Var to) const {
  PhasePoly r;
  for (const auto& [m, c] : terms_) {
    if (m.contains(from))
      r.add_term(m.without(from).with(to), c);
    else
      r.add_term(m, c);
  }
  return r;
}

Phase PhasePoly::take_constant() {
  auto it = terms_.find(BoolMonomial::one());
  if (it == terms_.end()) return Phase::zero();
  Phase c = it->second;
  terms_.erase(it);
  return c;
}

std::string PhasePoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it != terms_.begin()) s += " + ";
    s += it->second.str() + "*" + it->first.str();
  }
  return s;
}

PhasePoly scale_lift(const Phase& alpha, const BoolPoly& q) {
  const std::vector<BoolMonomial> ms(q.monomials().begin(), q.monomials().end());
  const std::size_t n = ms.size();
  if (n > 24) throw Error("scale_lift: too many monomials (" + std::to_string(n) + ")");
  PhasePoly out;
  if (alpha.is_zero() || n == 0) return out;

  // Coefficient per subset size r is alpha*(-2)^{r-1}; once it reduces to an
  // exact 0 it stays 0 for all larger r, so sizes beyond that are skipped.
  std::vector<Phase> coeff_by_size(n + 1, Phase::zero());
  std::size_t max_size = 0;
  std::int64_t pow = 1;
  for (std::size_t r = 1; r <= n; ++r) {
    const Phase c = alpha.times_int(pow);
    coeff_by_size[r] = c;
    if (c.exact() && c.is_zero()) break;
    max_size = r;
    if (r < n) pow *= -2;
  }
  if (max_size == 0) return out;

  // Enumerate subsets up to max_size elements.
  std::vector<std::size_t> idx;
  std::function<void(std::size_t, const BoolMonomial&)> rec = [&](std::size_t start,
                                                                  const BoolMonomial& acc) {
    if (!idx.empty()) out.add_term(acc, coeff_by_size[idx.size()]);
    if (idx.size() == max_size) return;
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1, acc.times(ms[i]));
      idx.pop_back();
    }
  };
  rec(0, BoolMonomial::one());
  return out;
}

PhasePoly canonicalize(const Phase& alpha, const BoolPoly& f) { return scale_lift(alpha, f); }

PhasePoly substitute(const PhasePoly& r, Var y, const IntPoly& p) {
  auto [s, t] = r.split_on(y);
  PhasePoly out = t;
  for (const auto& [sm, sc] : s.terms())
    for (const auto& [pm, pc] : p.terms()) out.add_term(sm.times(pm), sc.times_int(pc));
  return out;
}

} // namespace zhps
