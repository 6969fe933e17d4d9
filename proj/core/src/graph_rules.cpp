#include "zhps/graph_rules.hpp"

#include <algorithm>

#include "zhps/rules.hpp"

namespace zhps {

std::string rule_name(GRule r) {
  switch (r) {
    case GRule::HyperPivot: return "hyper_pivot";
    case GRule::FourierHyperPivot: return "fourier_hyper_pivot";
    case GRule::HyperLocalComp: return "hyper_local_complement";
    case GRule::CaseHyperPivot: return "case_hyper_pivot";
  }
  return "?";
}

namespace {

const Phase kHalf = Phase::of(1, 2);

void record(RewriteTrace* trace, const std::string& rule, std::vector<int> removed,
            const Diagram& before, const Diagram& after) {
  if (!trace) return;
  TraceStep s;
  s.rule = rule;
  s.removed = std::move(removed);
  s.scalar_delta = after.scalar().delta_from(before.scalar());
  s.count_before = before.spiders().size();
  s.count_after = after.spiders().size();
  trace->add(std::move(s));
}

std::set<SpiderId> rest_of(const Diagram::HBox& box, SpiderId s) {
  std::set<SpiderId> r = box.neighbors;
  r.erase(s);
  return r;
}

std::set<SpiderId> set_union(const std::set<SpiderId>& a, const std::set<SpiderId>& b) {
  std::set<SpiderId> r = a;
  r.insert(b.begin(), b.end());
  return r;
}

BoolMonomial as_monomial(const std::set<SpiderId>& s) {
  return BoolMonomial(std::vector<Var>(s.begin(), s.end()));
}

std::set<SpiderId> as_set(const BoolMonomial& m) {
  return std::set<SpiderId>(m.vars().begin(), m.vars().end());
}

// No H-box other than `except` may touch both u and v.
bool has_common_box(const Diagram& d, SpiderId u, SpiderId v, HBoxId except) {
  for (const auto& [id, box] : d.hboxes())
    if (id != except && box.neighbors.count(u) && box.neighbors.count(v)) return true;
  return false;
}

// Fuses boxes sharing a neighborhood and drops 1-labeled boxes.
void fuse_duplicates(Diagram& d) {
  bool again = true;
  while (again) {
    again = false;
    std::map<std::set<SpiderId>, HBoxId> seen;
    for (const auto& [id, box] : d.hboxes()) {
      if (box.label.is_one()) {
        d.remove_hbox(id);
        again = true;
        break;
      }
      auto [it, inserted] = seen.try_emplace(box.neighbors, id);
      if (!inserted) {
        const HBoxId keep = it->second;
        const HLabel merged = d.hboxes().at(keep).label.times(box.label);
        const std::set<SpiderId> nbrs = box.neighbors;
        d.remove_hbox(id);
        d.remove_hbox(keep);
        if (!merged.is_one()) d.add_hbox(merged, nbrs);
        again = true;
        break;
      }
    }
  }
}

// Replaces `gone` by `keep` in every neighborhood and boundary slot.
void merge_spiders(Diagram& d, SpiderId keep, SpiderId gone) {
  std::vector<std::pair<HBoxId, Diagram::HBox>> touched;
  for (const auto& [id, box] : d.hboxes())
    if (box.neighbors.count(gone)) touched.emplace_back(id, box);
  for (auto& [id, box] : touched) {
    d.remove_hbox(id);
    box.neighbors.erase(gone);
    box.neighbors.insert(keep);
    d.add_hbox(box.label, box.neighbors);
  }
  std::vector<SpiderId> in = d.inputs(), out = d.outputs();
  for (auto& s : in)
    if (s == gone) s = keep;
  for (auto& s : out)
    if (s == gone) s = keep;
  d.set_inputs(in);
  d.set_outputs(out);
  d.remove_spider(gone);
  fuse_duplicates(d);
}

struct SideBoxes {
  std::vector<HBoxId> ids;
  std::vector<std::set<SpiderId>> rests;        // neighborhoods minus the pivot spider
  std::vector<Phase> phases;                    // labels as phases
  bool all_unlabeled{true};
  bool all_phase{true};
};

SideBoxes side_boxes(const Diagram& d, SpiderId s, HBoxId except) {
  SideBoxes out;
  for (HBoxId id : d.boxes_on(s)) {
    if (id == except) continue;
    const auto& box = d.hboxes().at(id);
    out.ids.push_back(id);
    out.rests.push_back(rest_of(box, s));
    if (box.label.is_phase()) {
      out.phases.push_back(box.label.phase());
      if (!box.label.is_unlabeled()) out.all_unlabeled = false;
    } else {
      out.phases.push_back(Phase::zero());
      out.all_phase = false;
      out.all_unlabeled = false;
    }
  }
  return out;
}

} // namespace

std::vector<GMatch> match_hyper_local_complement(const Diagram& d) {
  std::vector<GMatch> out;
  for (SpiderId u : d.spiders()) {
    if (d.on_boundary(u)) continue;
    std::optional<HBoxId> phase_box;
    bool conj = false, ok = true;
    for (HBoxId id : d.boxes_on(u)) {
      const auto& box = d.hboxes().at(id);
      if (box.neighbors.size() == 1 && box.label.is_phase() && box.label.phase().exact()) {
        if (box.label.phase() == Phase::of(1, 4)) {
          phase_box = id;
          continue;
        }
        if (box.label.phase() == Phase::of(3, 4)) {
          phase_box = id;
          conj = true;
          continue;
        }
      }
      if (!box.label.is_unlabeled()) {
        ok = false;
        break;
      }
    }
    if (!ok || !phase_box) continue;
    GMatch m;
    m.rule = GRule::HyperLocalComp;
    m.u = u;
    m.box = *phase_box;
    m.conjugate = conj;
    out.push_back(m);
  }
  return out;
}

Diagram hyper_local_complement(const Diagram& d, const GMatch& m, RewriteTrace* trace) {
  if (!d.spiders().count(m.u)) throw Error("hyper_local_complement: stale match");
  const SideBoxes side = side_boxes(d, m.u, m.box);
  if (!side.all_unlabeled) throw Error("hyper_local_complement: neighbor boxes must be unlabeled");

  Diagram r = d;
  r.remove_hbox(m.box);
  for (HBoxId id : side.ids) r.remove_hbox(id);
  r.remove_spider(m.u);
  r.scalar().mul_pow2_halves(1);
  r.scalar().mul_phase(m.conjugate ? Phase::of(-1, 8) : Phase::of(1, 8));
  const Phase single = m.conjugate ? Phase::of(1, 4) : Phase::of(3, 4);
  for (std::size_t i = 0; i < side.rests.size(); ++i) r.add_phase_term(single, side.rests[i]);
  for (std::size_t i = 0; i < side.rests.size(); ++i)
    for (std::size_t j = i + 1; j < side.rests.size(); ++j)
      r.add_phase_term(kHalf, set_union(side.rests[i], side.rests[j]));
  record(trace, rule_name(m.rule), {m.u}, d, r);
  return r;
}

std::vector<GMatch> match_hyper_pivot(const Diagram& d) {
  std::vector<GMatch> out;
  for (const auto& [id, box] : d.hboxes()) {
    if (!box.label.is_unlabeled() || box.neighbors.size() != 2) continue;
    const SpiderId u = *box.neighbors.begin();
    const SpiderId v = *box.neighbors.rbegin();
    if (d.on_boundary(u) || d.on_boundary(v)) continue;
    if (has_common_box(d, u, v, id)) continue;
    const SideBoxes su = side_boxes(d, u, id), sv = side_boxes(d, v, id);
    if (!su.all_unlabeled || !sv.all_unlabeled) continue;
    GMatch m;
    m.rule = GRule::HyperPivot;
    m.u = u;
    m.v = v;
    m.box = id;
    out.push_back(m);
  }
  return out;
}

Diagram hyper_pivot(const Diagram& d, const GMatch& m, RewriteTrace* trace) {
  if (!d.spiders().count(m.u) || !d.spiders().count(m.v)) throw Error("hyper_pivot: stale match");
  const SideBoxes su = side_boxes(d, m.u, m.box), sv = side_boxes(d, m.v, m.box);
  if (!su.all_unlabeled || !sv.all_unlabeled) throw Error("hyper_pivot: labeled side box");
  if (has_common_box(d, m.u, m.v, m.box)) throw Error("hyper_pivot: common box");

  Diagram r = d;
  r.remove_hbox(m.box);
  for (HBoxId id : su.ids) r.remove_hbox(id);
  for (HBoxId id : sv.ids) r.remove_hbox(id);
  r.remove_spider(m.u);
  r.remove_spider(m.v);
  r.scalar().mul_pow2_halves(2);
  for (const auto& nu : su.rests)
    for (const auto& nv : sv.rests) r.add_phase_term(kHalf, set_union(nu, nv));
  record(trace, rule_name(m.rule), {m.u, m.v}, d, r);
  return r;
}

std::vector<GMatch> match_fourier_hyper_pivot(const Diagram& d) {
  std::vector<GMatch> out;
  for (const auto& [id, box] : d.hboxes()) {
    if (!box.label.is_unlabeled() || box.neighbors.size() != 2) continue;
    const SpiderId a = *box.neighbors.begin();
    const SpiderId b = *box.neighbors.rbegin();
    if (d.on_boundary(a) || d.on_boundary(b)) continue;
    if (has_common_box(d, a, b, id)) continue;
    const SideBoxes sa = side_boxes(d, a, id), sb = side_boxes(d, b, id);
    for (const auto& [u, v, su, sv] :
         {std::tuple{a, b, &sa, &sb}, std::tuple{b, a, &sb, &sa}}) {
      if (!su->all_unlabeled || !sv->all_phase) continue;
      GMatch m;
      m.rule = GRule::FourierHyperPivot;
      m.u = u;
      m.v = v;
      m.box = id;
      out.push_back(m);
      break;
    }
  }
  return out;
}

Diagram fourier_hyper_pivot(const Diagram& d, const GMatch& m, RewriteTrace* trace) {
  if (!d.spiders().count(m.u) || !d.spiders().count(m.v))
    throw Error("fourier_hyper_pivot: stale match");
  const SideBoxes su = side_boxes(d, m.u, m.box), sv = side_boxes(d, m.v, m.box);
  if (!su.all_unlabeled) throw Error("fourier_hyper_pivot: pivot side must be unlabeled");
  if (!sv.all_phase) throw Error("fourier_hyper_pivot: general label on the phased side");
  if (has_common_box(d, m.u, m.v, m.box)) throw Error("fourier_hyper_pivot: common box");

  BoolPoly q;
  for (const auto& nu : su.rests) q.xor_mono(as_monomial(nu));

  Diagram r = d;
  r.remove_hbox(m.box);
  for (HBoxId id : su.ids) r.remove_hbox(id);
  for (HBoxId id : sv.ids) r.remove_hbox(id);
  r.remove_spider(m.u);
  r.remove_spider(m.v);
  r.scalar().mul_pow2_halves(2);
  for (std::size_t j = 0; j < sv.ids.size(); ++j) {
    const PhasePoly part = scale_lift(sv.phases[j], q);
    for (const auto& [pm, pc] : part.terms())
      r.add_phase_term(pc, set_union(sv.rests[j], as_set(pm)));
  }
  record(trace, rule_name(m.rule), {m.u, m.v}, d, r);
  return r;
}

namespace {

struct CaseSides {
  BoolPoly q, q_prime;
  detail::CaseStructure structure;
  SideBoxes su, sv;
};

std::optional<CaseSides> resolve_case(const Diagram& d, SpiderId u, SpiderId v, HBoxId h) {
  const SideBoxes su = side_boxes(d, u, h), sv = side_boxes(d, v, h);
  if (!su.all_phase || !sv.all_phase) return std::nullopt;
  BoolPoly q, q_prime;
  std::vector<std::pair<Phase, BoolMonomial>> a_side, b_side;
  for (std::size_t i = 0; i < su.ids.size(); ++i) {
    if (su.phases[i].exact() && su.phases[i] == kHalf)
      q.xor_mono(as_monomial(su.rests[i]));
    else
      a_side.emplace_back(su.phases[i], as_monomial(su.rests[i]));
  }
  for (std::size_t j = 0; j < sv.ids.size(); ++j) {
    if (sv.phases[j].exact() && sv.phases[j] == kHalf)
      q_prime.xor_mono(as_monomial(sv.rests[j]));
    else
      b_side.emplace_back(sv.phases[j], as_monomial(sv.rests[j]));
  }
  auto s = detail::detect_case_structure(a_side, b_side);
  if (!s) return std::nullopt;
  return CaseSides{q, q_prime, *s, su, sv};
}

} // namespace

std::vector<GMatch> match_case_hyper_pivot(const Diagram& d) {
  std::vector<GMatch> out;
  for (const auto& [id, box] : d.hboxes()) {
    if (!box.label.is_unlabeled() || box.neighbors.size() != 2) continue;
    const SpiderId a = *box.neighbors.begin();
    const SpiderId b = *box.neighbors.rbegin();
    if (d.on_boundary(a) || d.on_boundary(b)) continue;
    if (has_common_box(d, a, b, id)) continue;
    for (const auto& [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
      if (resolve_case(d, u, v, id)) {
        GMatch m;
        m.rule = GRule::CaseHyperPivot;
        m.u = u;
        m.v = v;
        m.box = id;
        out.push_back(m);
        break;
      }
    }
  }
  return out;
}

Diagram case_hyper_pivot(const Diagram& d, const GMatch& m, RewriteTrace* trace) {
  if (!d.spiders().count(m.u) || !d.spiders().count(m.v))
    throw Error("case_hyper_pivot: stale match");
  auto sides = resolve_case(d, m.u, m.v, m.box);
  if (!sides) throw Error("case_hyper_pivot: complement structure not syntactically detectable");

  Diagram r = d;
  r.remove_hbox(m.box);
  for (HBoxId id : sides->su.ids) r.remove_hbox(id);
  for (HBoxId id : sides->sv.ids) r.remove_hbox(id);
  r.remove_spider(m.u);
  r.remove_spider(m.v);
  r.scalar().mul_pow2_halves(2);

  const PhasePoly qq = canonicalize(kHalf, sides->q.times(sides->q_prime));
  for (const auto& [pm, pc] : qq.terms()) r.add_phase_term(pc, as_set(pm));

  const IntPoly lift_qp = lift(sides->q_prime);
  for (const auto& [alpha, mono] : sides->structure.alpha_terms)
    for (const auto& [pm, pc] : lift_qp.terms())
      r.add_phase_term(alpha.times_int(pc), as_set(mono.times(pm)));

  const IntPoly lift_q = lift(sides->q);
  const BoolMonomial gate = sides->structure.gate;
  for (const auto& [beta, mono] : sides->structure.beta_pairs)
    for (const auto& [pm, pc] : lift_q.terms()) {
      r.add_phase_term(beta.times_int(pc), as_set(mono.times(pm)));
      r.add_phase_term((-beta).times_int(pc), as_set(mono.times(gate).times(pm)));
    }
  record(trace, rule_name(m.rule), {m.u, m.v}, d, r);
  return r;
}

std::vector<FTMatch> match_fourier_transform(const Diagram& d) {
  std::vector<FTMatch> out;
  for (const auto& [id, box] : d.hboxes()) {
    if (!box.label.is_phase() && std::abs(box.label.value()) == 0.0) continue;
    if (auto m = match_fourier_transform_at(d, id)) out.push_back(*m);
  }
  return out;
}

std::optional<FTMatch> match_fourier_transform_at(const Diagram& d, HBoxId phase_box) {
  auto it = d.hboxes().find(phase_box);
  if (it == d.hboxes().end()) return std::nullopt;
  const auto& fbox = it->second;
  if (fbox.neighbors.size() != 1) return std::nullopt;
  if (!fbox.label.is_phase()) {
    if (std::abs(fbox.label.value()) == 0.0)
      throw Error("fourier_transform: zero H-box label");
    if (!HLabel::from_complex(fbox.label.value()).is_phase()) return std::nullopt;
  }
  const SpiderId q = *fbox.neighbors.begin();
  if (d.on_boundary(q)) return std::nullopt;
  const auto qboxes = d.boxes_on(q);
  if (qboxes.size() != 2) return std::nullopt;
  const HBoxId h = qboxes[0] == phase_box ? qboxes[1] : qboxes[0];
  const auto& hbox = d.hboxes().at(h);
  if (!hbox.label.is_unlabeled() || hbox.neighbors.size() != 2 || !hbox.neighbors.count(q))
    return std::nullopt;
  const SpiderId p = *hbox.neighbors.begin() == q ? *hbox.neighbors.rbegin() : *hbox.neighbors.begin();
  if (p == q || d.on_boundary(p)) return std::nullopt;
  const SideBoxes sp = side_boxes(d, p, h);
  if (!sp.all_unlabeled) return std::nullopt;
  for (const auto& rest : sp.rests)
    if (rest.count(q)) return std::nullopt;
  FTMatch m;
  m.phase_box = phase_box;
  m.hub = p;
  m.carrier = q;
  return m;
}

Diagram fourier_transform(const Diagram& d, const FTMatch& m, RewriteTrace* trace) {
  auto it = d.hboxes().find(m.phase_box);
  if (it == d.hboxes().end()) throw Error("fourier_transform: stale match");
  Phase alpha;
  if (it->second.label.is_phase()) {
    alpha = it->second.label.phase();
  } else {
    const HLabel conv = HLabel::from_complex(it->second.label.value());
    if (!conv.is_phase()) throw Error("fourier_transform: label is not a pure phase");
    alpha = conv.phase();
  }
  const auto qboxes = d.boxes_on(m.carrier);
  if (qboxes.size() != 2) throw Error("fourier_transform: stale match");
  const HBoxId h = qboxes[0] == m.phase_box ? qboxes[1] : qboxes[0];
  const SideBoxes sp = side_boxes(d, m.hub, h);

  BoolPoly q;
  for (const auto& rest : sp.rests) q.xor_mono(as_monomial(rest));

  Diagram r = d;
  r.remove_hbox(m.phase_box);
  r.remove_hbox(h);
  for (HBoxId id : sp.ids) r.remove_hbox(id);
  r.remove_spider(m.hub);
  r.remove_spider(m.carrier);
  r.scalar().mul_pow2_halves(2);
  const PhasePoly part = scale_lift(alpha, q);
  for (const auto& [pm, pc] : part.terms()) r.add_phase_term(pc, as_set(pm));
  record(trace, "fourier_transform", {m.hub, m.carrier}, d, r);
  return r;
}

namespace {

// Interior degree-2 spider between two plain Hadamard boxes: contract the
// chain, fusing its endpoints; factor 2.
bool chain_cleanup_step(Diagram& d, RewriteTrace* trace) {
  for (SpiderId s : d.spiders()) {
    if (d.on_boundary(s)) continue;
    const auto boxes = d.boxes_on(s);
    if (boxes.size() != 2) continue;
    const auto& b0 = d.hboxes().at(boxes[0]);
    const auto& b1 = d.hboxes().at(boxes[1]);
    if (!b0.label.is_unlabeled() || b0.neighbors.size() != 2) continue;
    if (!b1.label.is_unlabeled() || b1.neighbors.size() != 2) continue;
    const SpiderId a = *rest_of(b0, s).begin();
    const SpiderId b = *rest_of(b1, s).begin();
    if (a == b) continue;
    const Diagram before = d;
    d.remove_hbox(boxes[0]);
    d.remove_hbox(boxes[1]);
    d.remove_spider(s);
    d.scalar().mul_pow2_halves(2);
    merge_spiders(d, std::min(a, b), std::max(a, b));
    record(trace, "hadamard_chain", {s, std::max(a, b)}, before, d);
    return true;
  }
  return false;
}

} // namespace

std::pair<Diagram, RewriteTrace> simplify_diagram(const Diagram& d,
                                                  const DiagramSimplifyPolicy& policy) {
  Diagram cur = d;
  RewriteTrace trace;
  const std::size_t max_steps = cur.spiders().size() + 2;
  for (std::size_t step = 0; step <= max_steps; ++step) {
    if (policy.chain_cleanup && chain_cleanup_step(cur, &trace)) continue;
    bool fired = false;
    for (GRule rule : policy.order) {
      std::vector<GMatch> ms;
      switch (rule) {
        case GRule::HyperPivot: ms = match_hyper_pivot(cur); break;
        case GRule::FourierHyperPivot: ms = match_fourier_hyper_pivot(cur); break;
        case GRule::HyperLocalComp: ms = match_hyper_local_complement(cur); break;
        case GRule::CaseHyperPivot: ms = match_case_hyper_pivot(cur); break;
      }
      if (ms.empty()) continue;
      const GMatch& m = ms.front();
      switch (rule) {
        case GRule::HyperPivot: cur = hyper_pivot(cur, m, &trace); break;
        case GRule::FourierHyperPivot: cur = fourier_hyper_pivot(cur, m, &trace); break;
        case GRule::HyperLocalComp: cur = hyper_local_complement(cur, m, &trace); break;
        case GRule::CaseHyperPivot: cur = case_hyper_pivot(cur, m, &trace); break;
      }
      fired = true;
      break;
    }
    if (!fired) break;
  }
  return {cur, trace};
}

} // namespace zhps
