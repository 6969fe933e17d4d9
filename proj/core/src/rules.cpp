#include "zhps/rules.hpp"

#include <algorithm>

namespace zhps {

std::string rule_name(PSRule r) {
  switch (r) {
    case PSRule::Elim: return "Elim";
    case PSRule::HH: return "HH";
    case PSRule::Omega: return "omega";
    case PSRule::Case: return "Case";
  }
  return "?";
}

namespace {

const Phase kHalf = Phase::of(1, 2);
const Phase kQuarter = Phase::of(1, 4);
const Phase kThreeQuarters = Phase::of(3, 4);

bool is_exact(const Phase& p, const Phase& q) { return p.exact() && p == q; }

void record(RewriteTrace* trace, const std::string& rule, std::vector<int> removed,
            const PurePathSum& before, const PurePathSum& after) {
  if (!trace) return;
  TraceStep s;
  s.rule = rule;
  s.removed = std::move(removed);
  s.scalar_delta = after.scalar().delta_from(before.scalar());
  s.count_before = before.num_vars();
  s.count_after = after.num_vars();
  trace->add(std::move(s));
}

/// Terms of phi containing v, with v stripped from each monomial.
std::vector<std::pair<Phase, BoolMonomial>> terms_on(const PurePathSum& e, Var v) {
  std::vector<std::pair<Phase, BoolMonomial>> out;
  for (const auto& [m, c] : e.phi().terms())
    if (m.contains(v)) out.emplace_back(c, m.without(v));
  return out;
}

} // namespace

std::vector<PSMatch> match_elim(const PurePathSum& e) {
  std::vector<PSMatch> out;
  for (Var v : e.vars()) {
    if (e.in_signatures(v)) continue;
    if (e.phi().contains_var(v)) continue;
    PSMatch m;
    m.rule = PSRule::Elim;
    m.y0 = v;
    out.push_back(m);
  }
  return out;
}

PurePathSum apply_elim(const PurePathSum& e, const PSMatch& m, RewriteTrace* trace) {
  if (e.phi().contains_var(m.y0) || e.in_signatures(m.y0) || !e.has_var(m.y0))
    throw Error("apply_elim: stale match");
  PurePathSum r = e;
  r.remove_var(m.y0);
  r.scalar().mul_pow2_halves(2);
  record(trace, "Elim", {m.y0}, e, r);
  return r;
}

std::vector<PSMatch> match_omega(const PurePathSum& e) {
  std::vector<PSMatch> out;
  for (Var y0 : e.vars()) {
    if (e.in_signatures(y0)) continue;
    const auto terms = terms_on(e, y0);
    if (terms.empty()) continue;
    bool ok = true, saw_quarter = false, conj = false;
    BoolPoly q;
    for (const auto& [c, m] : terms) {
      if (m.is_constant()) {
        if (is_exact(c, kQuarter)) {
          saw_quarter = true;
        } else if (is_exact(c, kThreeQuarters)) {
          saw_quarter = true;
          conj = true;
        } else {
          ok = false;
          break;
        }
      } else if (is_exact(c, kHalf)) {
        q.xor_mono(m);
      } else {
        ok = false;
        break;
      }
    }
    if (!ok || !saw_quarter) continue;
    PSMatch m;
    m.rule = PSRule::Omega;
    m.y0 = y0;
    m.conjugate = conj;
    m.q = q;
    out.push_back(m);
  }
  return out;
}

PurePathSum apply_omega(const PurePathSum& e, const PSMatch& m, RewriteTrace* trace) {
  if (!e.has_var(m.y0)) throw Error("apply_omega: stale match");
  PurePathSum r = e;
  r.drop_terms_with(m.y0);
  r.remove_var(m.y0);
  r.scalar().mul_pow2_halves(1);
  if (!m.conjugate) {
    r.scalar().mul_phase(Phase::of(1, 8));
    r.add_phase_poly(scale_lift(Phase::of(-1, 4), m.q));
  } else {
    r.scalar().mul_phase(Phase::of(-1, 8));
    r.add_phase_poly(scale_lift(Phase::of(1, 4), m.q));
  }
  record(trace, "omega", {m.y0}, e, r);
  return r;
}

std::vector<PSMatch> match_hh(const PurePathSum& e) {
  std::vector<PSMatch> out;
  for (Var y0 : e.vars()) {
    if (e.in_signatures(y0)) continue;
    const auto terms = terms_on(e, y0);
    // Candidate partners: single-variable rest monomials with coefficient 1/2.
    for (const auto& [c1, m1] : terms) {
      if (m1.degree() != 1 || !is_exact(c1, kHalf)) continue;
      const Var y1 = m1.vars()[0];
      if (y1 == y0) continue;
      bool ok = true;
      BoolPoly q;
      for (const auto& [c, m] : terms) {
        if (m == m1) continue;
        if (!is_exact(c, kHalf) || m.contains(y1)) {
          ok = false;
          break;
        }
        q.xor_mono(m);
      }
      if (!ok) continue;
      PSMatch m;
      m.rule = PSRule::HH;
      m.y0 = y0;
      m.y1 = y1;
      m.q = q;
      if (e.in_signatures(y1)) {
        // Only a pure renaming can retarget signature entries.
        if (q.size() != 1 || q.monomials().begin()->degree() != 1) continue;
        const Var z = q.monomials().begin()->vars()[0];
        if (z == y1) continue;
        m.retarget = true;
        m.retarget_to = z;
      }
      out.push_back(m);
    }
  }
  return out;
}

PurePathSum apply_hh(const PurePathSum& e, const PSMatch& m, RewriteTrace* trace) {
  if (!e.has_var(m.y0) || !e.has_var(m.y1)) throw Error("apply_hh: stale match");
  PurePathSum r = e;
  r.drop_terms_with(m.y0);
  if (m.retarget) {
    PhasePoly renamed = r.phi().renamed(m.y1, m.retarget_to);
    r.retarget_signatures(m.y1, m.retarget_to);
    r.set_phi(std::move(renamed));
  } else {
    r.set_phi(substitute(r.phi(), m.y1, lift(m.q)));
  }
  r.remove_var(m.y0);
  r.remove_var(m.y1);
  r.scalar().mul_pow2_halves(2);
  record(trace, "HH", {m.y0, m.y1}, e, r);
  return r;
}

namespace detail {

std::optional<CaseStructure> detect_case_structure(
    const std::vector<std::pair<Phase, BoolMonomial>>& y0_side,
    const std::vector<std::pair<Phase, BoolMonomial>>& y1_side) {
  auto consistent = [&](const BoolMonomial& gate) -> std::optional<CaseStructure> {
    for (const auto& [c, m] : y0_side)
      if (!gate.divides(m)) return std::nullopt;
    // Pair up the y1 side as (beta, n) / (-beta, n + gate) with gate not
    // dividing n.
    std::vector<std::pair<Phase, BoolMonomial>> bases;
    std::map<BoolMonomial, Phase> pool;
    for (const auto& [c, m] : y1_side) {
      if (pool.count(m)) return std::nullopt;
      pool.emplace(m, c);
    }
    std::set<BoolMonomial> consumed;
    for (const auto& [m, c] : pool) {
      if (consumed.count(m)) continue;
      if (gate.divides(m)) continue; // must be some base's partner
      const BoolMonomial partner = m.times(gate);
      auto it = pool.find(partner);
      if (it == pool.end() || consumed.count(partner)) return std::nullopt;
      if (!(it->second == -c)) return std::nullopt;
      consumed.insert(m);
      consumed.insert(partner);
      bases.emplace_back(c, m);
    }
    if (consumed.size() != pool.size()) return std::nullopt;
    CaseStructure s;
    s.gate = gate;
    s.alpha_terms = y0_side;
    s.beta_pairs = std::move(bases);
    return s;
  };

  if (y1_side.empty()) {
    // The gate only matters through the beta side here, so any monomial
    // dividing every alpha term works; take the full intersection.
    BoolMonomial gate;
    bool first = true;
    for (const auto& [c, m] : y0_side) {
      if (first) {
        gate = m;
        first = false;
        continue;
      }
      std::vector<Var> common;
      for (Var v : gate.vars())
        if (m.contains(v)) common.push_back(v);
      gate = BoolMonomial(common);
    }
    return consistent(gate);
  }

  // Derive candidate gates from strict-subset pairs with opposite
  // coefficients; first consistent candidate wins.
  for (const auto& [c1, m1] : y1_side)
    for (const auto& [c2, m2] : y1_side) {
      if (m1 == m2) continue;
      if (!(c2 == -c1)) continue;
      if (!m1.divides(m2)) continue;
      std::vector<Var> diff;
      for (Var v : m2.vars())
        if (!m1.contains(v)) diff.push_back(v);
      if (diff.empty()) continue;
      if (auto s = consistent(BoolMonomial(diff))) return s;
    }
  return std::nullopt;
}

} // namespace detail

std::vector<PSMatch> match_case(const PurePathSum& e) {
  std::vector<PSMatch> out;
  for (Var y0 : e.vars()) {
    if (e.in_signatures(y0)) continue;
    for (Var y1 : e.vars()) {
      if (y1 == y0 || e.in_signatures(y1)) continue;
      if (!(e.phi().coeff(BoolMonomial({y0, y1})) == kHalf)) continue;
      bool ok = true;
      BoolPoly q, q_prime;
      std::vector<std::pair<Phase, BoolMonomial>> a_side, b_side;
      for (const auto& [mono, c] : e.phi().terms()) {
        const bool h0 = mono.contains(y0), h1 = mono.contains(y1);
        if (!h0 && !h1) continue;
        if (h0 && h1) {
          if (mono == BoolMonomial({y0, y1})) continue;
          ok = false;
          break;
        }
        const BoolMonomial rest = h0 ? mono.without(y0) : mono.without(y1);
        if (is_exact(c, kHalf)) {
          (h0 ? q : q_prime).xor_mono(rest);
        } else {
          (h0 ? a_side : b_side).emplace_back(c, rest);
        }
      }
      if (!ok) continue;
      auto s = detail::detect_case_structure(a_side, b_side);
      if (!s) continue;
      PSMatch m;
      m.rule = PSRule::Case;
      m.y0 = y0;
      m.y1 = y1;
      m.q = q;
      m.q_prime = q_prime;
      m.x_mono = s->gate;
      m.alpha_terms = s->alpha_terms;
      m.beta_pairs = s->beta_pairs;
      out.push_back(m);
    }
  }
  return out;
}

PurePathSum apply_case(const PurePathSum& e, const PSMatch& m, RewriteTrace* trace) {
  if (!e.has_var(m.y0) || !e.has_var(m.y1)) throw Error("apply_case: stale match");
  PurePathSum r = e;
  r.drop_terms_with(m.y0);
  r.drop_terms_with(m.y1);
  r.remove_var(m.y0);
  r.remove_var(m.y1);
  r.scalar().mul_pow2_halves(2);

  // (1/2) Q Q'
  r.add_phase_poly(canonicalize(kHalf, m.q.times(m.q_prime)));
  // alpha X lift(Q'): the gate is already a factor of every alpha monomial.
  const IntPoly lift_qp = lift(m.q_prime);
  for (const auto& [alpha, mono] : m.alpha_terms)
    for (const auto& [pm, pc] : lift_qp.terms())
      r.add_phase(alpha.times_int(pc), mono.times(pm));
  // beta (1 - X) lift(Q), in the explicit two-term form.
  const IntPoly lift_q = lift(m.q);
  for (const auto& [beta, mono] : m.beta_pairs)
    for (const auto& [pm, pc] : lift_q.terms()) {
      r.add_phase(beta.times_int(pc), mono.times(pm));
      r.add_phase((-beta).times_int(pc), mono.times(m.x_mono).times(pm));
    }
  record(trace, "Case", {m.y0, m.y1}, e, r);
  return r;
}

std::vector<PSMatch> match_rule(const PurePathSum& e, PSRule r) {
  switch (r) {
    case PSRule::Elim: return match_elim(e);
    case PSRule::HH: return match_hh(e);
    case PSRule::Omega: return match_omega(e);
    case PSRule::Case: return match_case(e);
  }
  return {};
}

PurePathSum apply_rule(const PurePathSum& e, const PSMatch& m, RewriteTrace* trace) {
  switch (m.rule) {
    case PSRule::Elim: return apply_elim(e, m, trace);
    case PSRule::HH: return apply_hh(e, m, trace);
    case PSRule::Omega: return apply_omega(e, m, trace);
    case PSRule::Case: return apply_case(e, m, trace);
  }
  throw Error("apply_rule: unknown rule");
}

std::pair<PurePathSum, RewriteTrace> simplify(const PurePathSum& e, const SimplifyPolicy& policy) {
  PurePathSum cur = e;
  RewriteTrace trace;
  const std::size_t max_steps = cur.num_vars() + 1;
  for (std::size_t step = 0; step <= max_steps; ++step) {
    bool fired = false;
    for (PSRule r : policy.order) {
      const auto ms = match_rule(cur, r);
      if (!ms.empty()) {
        cur = apply_rule(cur, ms.front(), &trace);
        fired = true;
        break;
      }
    }
    if (!fired) break;
  }
  return {cur, trace};
}

} // namespace zhps
