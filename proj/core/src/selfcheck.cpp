#include "zhps/selfcheck.hpp"

#include <algorithm>
#include <functional>

#include "zhps/graph_rules.hpp"
#include "zhps/oracle.hpp"
#include "zhps/rules.hpp"
#include "zhps/translate.hpp"

namespace zhps {

namespace {

// ---- raw instances for the base rules ----------------------------------

struct RawBuilder {
  RawDiagram d;
  int boundary_in(int w) {
    d.mutable_inputs().push_back(w);
    return w;
  }
  int boundary_out(int w) {
    d.mutable_outputs().push_back(w);
    return w;
  }
};

RawDiagram zs1_instance(Rng& rng) {
  RawBuilder b;
  const int k = rng.range(1, 2);
  std::vector<int> shared;
  for (int i = 0; i < k; ++i) shared.push_back(b.d.fresh_wire());
  std::vector<int> la = shared, lb = shared;
  const int ea = rng.range(0, 2), eb = rng.range(0, 2);
  for (int i = 0; i < ea; ++i) la.push_back(b.boundary_in(b.d.fresh_wire()));
  for (int i = 0; i < eb; ++i) lb.push_back(b.boundary_out(b.d.fresh_wire()));
  b.d.add_gen(GenKind::ZSpider, {}, la);
  b.d.add_gen(GenKind::ZSpider, {}, lb);
  b.d.check_wiring();
  return b.d;
}

RawDiagram zs2_instance(Rng& rng) {
  RawBuilder b;
  const int w1 = b.d.fresh_wire(), w2 = b.d.fresh_wire();
  b.d.add_gen(GenKind::ZSpider, {w1}, {w2});
  if (rng.chance(0.5)) {
    b.boundary_in(w1);
    b.boundary_out(w2);
  } else {
    const int in = b.d.fresh_wire(), out = b.d.fresh_wire();
    b.d.add_gen(GenKind::HBox, {in}, {w1}, HLabel::from_phase(rng.phase()));
    b.d.add_gen(GenKind::HBox, {w2}, {out}, HLabel::minus_one());
    b.boundary_in(in);
    b.boundary_out(out);
  }
  b.d.check_wiring();
  return b.d;
}

RawDiagram hs1_instance(Rng& rng) {
  RawBuilder b;
  const int legs = rng.range(0, 3);
  std::vector<int> ws;
  for (int i = 0; i < legs; ++i) ws.push_back(b.boundary_out(b.d.fresh_wire()));
  HLabel label = HLabel::from_phase(rng.phase());
  if (rng.chance(0.25)) label = HLabel::general({rng.chance(0.5) ? 0.0 : -2.0, 0.5});
  b.d.add_gen(GenKind::HBox, {}, ws, label);
  b.d.check_wiring();
  return b.d;
}

RawDiagram hs2_instance(Rng& rng) {
  RawBuilder b;
  if (rng.chance(0.2)) { // bigon
    const int w1 = b.d.fresh_wire(), w2 = b.d.fresh_wire();
    b.d.add_gen(GenKind::HBox, {w1}, {w2}, HLabel::minus_one());
    b.d.add_gen(GenKind::HBox, {w1}, {w2}, HLabel::minus_one());
  } else {
    const int in = b.d.fresh_wire(), mid = b.d.fresh_wire(), out = b.d.fresh_wire();
    b.d.add_gen(GenKind::HBox, {in}, {mid}, HLabel::minus_one());
    b.d.add_gen(GenKind::HBox, {mid}, {out}, HLabel::minus_one());
    b.boundary_in(in);
    b.boundary_out(out);
  }
  b.d.check_wiring();
  return b.d;
}

RawDiagram ba1_instance(Rng& rng) {
  RawBuilder b;
  const int shared = b.d.fresh_wire();
  std::vector<int> lz = {shared}, lx = {shared};
  const int m = rng.range(0, 2), n = rng.range(0, 2);
  for (int i = 0; i < m; ++i) lz.push_back(b.boundary_in(b.d.fresh_wire()));
  for (int i = 0; i < n; ++i) lx.push_back(b.boundary_out(b.d.fresh_wire()));
  b.d.add_gen(GenKind::ZSpider, {}, lz);
  b.d.add_gen(GenKind::XSpider, {}, lx);
  b.d.check_wiring();
  return b.d;
}

RawDiagram ba2_instance(Rng& rng) {
  RawBuilder b;
  const int shared = b.d.fresh_wire();
  const int t = b.boundary_out(b.d.fresh_wire());
  std::vector<int> lx = {shared};
  const int n = rng.range(0, 2);
  for (int i = 0; i < n; ++i) lx.push_back(b.boundary_in(b.d.fresh_wire()));
  b.d.add_gen(GenKind::XSpider, {}, lx);
  b.d.add_gen(GenKind::HBox, {shared}, {t}, HLabel::minus_one());
  b.d.check_wiring();
  return b.d;
}

RawDiagram not_twin_instance(Rng& rng, bool ortho) {
  RawBuilder b;
  const int ns = rng.range(0, 2);
  const int wn1 = b.d.fresh_wire(), wn2 = b.d.fresh_wire();
  const int w1 = b.d.fresh_wire(), w2 = b.d.fresh_wire();
  b.d.add_gen(GenKind::Not, {wn1}, {wn2});
  std::vector<int> t_legs = {w1, wn1};
  if (ortho) t_legs.push_back(b.boundary_in(b.d.fresh_wire()));
  b.d.add_gen(GenKind::ZSpider, {}, t_legs);
  b.d.add_gen(GenKind::ZSpider, {}, {wn2, w2});
  std::vector<int> la = {w1}, lb = {w2};
  for (int i = 0; i < ns; ++i) {
    const int sa = b.d.fresh_wire(), sb = b.d.fresh_wire();
    const int ext = b.boundary_out(b.d.fresh_wire());
    b.d.add_gen(GenKind::ZSpider, {}, {sa, sb, ext});
    la.push_back(sa);
    lb.push_back(sb);
  }
  b.d.add_gen(GenKind::HBox, {}, la, HLabel::from_phase(rng.phase()));
  b.d.add_gen(GenKind::HBox, {}, lb, HLabel::from_phase(rng.phase()));
  b.d.check_wiring();
  return b.d;
}

Diagram m_instance(Rng& rng) {
  Diagram d = random_normalized_diagram(rng, 4, 3);
  std::vector<SpiderId> pool(d.spiders().begin(), d.spiders().end());
  std::set<SpiderId> nbrs;
  const int deg = rng.range(1, std::min<int>(2, static_cast<int>(pool.size())));
  std::shuffle(pool.begin(), pool.end(), rng.eng);
  for (int i = 0; i < deg; ++i) nbrs.insert(pool[static_cast<std::size_t>(i)]);
  d.add_hbox(HLabel::from_phase(rng.phase()), nbrs);
  d.add_hbox(HLabel::from_phase(rng.phase()), nbrs); // the duplicate to fuse
  return d;
}

Diagram u_instance(Rng& rng) {
  Diagram d = random_normalized_diagram(rng, 4, 3);
  std::vector<SpiderId> pool(d.spiders().begin(), d.spiders().end());
  std::set<SpiderId> nbrs = {pool[static_cast<std::size_t>(
      rng.range(0, static_cast<int>(pool.size()) - 1))]};
  d.add_hbox(HLabel::from_phase(Phase::zero()), nbrs);
  return d;
}

Diagram i_instance(Rng& rng) {
  Diagram d = random_normalized_diagram(rng, 4, 3);
  std::vector<SpiderId> pool(d.spiders().begin(), d.spiders().end());
  const SpiderId leg = d.add_spider();
  std::set<SpiderId> nbrs = {leg};
  const int extra = rng.range(0, 2);
  std::shuffle(pool.begin(), pool.end(), rng.eng);
  for (int i = 0; i < extra && i < static_cast<int>(pool.size()); ++i)
    nbrs.insert(pool[static_cast<std::size_t>(i)]);
  if (d.find_box_with_neighbors(nbrs)) return i_instance(rng);
  d.add_hbox(HLabel::from_phase(rng.phase()), nbrs);
  return d;
}

// ---- check drivers ------------------------------------------------------

struct Checker {
  const SelfCheckOptions& opt;
  RuleReport report;

  explicit Checker(const std::string& name, const SelfCheckOptions& o) : opt(o) {
    report.rule = name;
  }

  void run_case(const DenseMatrix& before, DenseMatrix after) {
    ++report.cases;
    if (opt.inject_fault == report.rule) after = after.scaled(2.0);
    const CompareResult c = compare(before, after, CompareMode::ExactScalar, opt.tol);
    report.worst_diff = std::max(report.worst_diff, c.max_abs_diff);
    if (!c.equal()) ++report.failures;
  }
  void fail() {
    ++report.cases;
    ++report.failures;
  }
};

RuleReport check_pathsum_rule(const std::string& name, PSRule rule,
                              const std::function<PurePathSum(Rng&)>& gen,
                              const SelfCheckOptions& opt) {
  Checker ck(name, opt);
  Rng rng(opt.seed);
  for (int i = 0; i < opt.cases; ++i) {
    const PurePathSum e = gen(rng);
    const auto ms = match_rule(e, rule);
    if (ms.empty()) {
      ck.fail();
      continue;
    }
    const PurePathSum after = apply_rule(e, ms.front(), nullptr);
    // Scalar bookkeeping is part of the contract.
    const auto delta = after.scalar().delta_from(e.scalar());
    const std::int64_t want = rule == PSRule::Omega ? 1 : 2;
    if (delta.half_pow2() != want) {
      ck.fail();
      continue;
    }
    ck.run_case(eval_pathsum(e), eval_pathsum(after));
  }
  return ck.report;
}

RuleReport check_graph_rule(const std::string& name, const std::function<Diagram(Rng&)>& gen,
                            const std::function<Diagram(const Diagram&)>& apply,
                            const SelfCheckOptions& opt) {
  Checker ck(name, opt);
  Rng rng(opt.seed);
  for (int i = 0; i < opt.cases; ++i) {
    const Diagram d = gen(rng);
    ck.run_case(eval_diagram(d), eval_diagram(apply(d)));
  }
  return ck.report;
}

RuleReport check_basic_raw(const std::string& name, BasicRule rule,
                           const std::function<RawDiagram(Rng&)>& gen,
                           const SelfCheckOptions& opt) {
  Checker ck(name, opt);
  Rng rng(opt.seed);
  for (int i = 0; i < opt.cases; ++i) {
    const RawDiagram d = gen(rng);
    const auto locs = match_basic(d, rule);
    if (locs.empty()) {
      ck.fail();
      continue;
    }
    ck.run_case(eval_diagram(d), eval_diagram(apply_basic(d, rule, locs.front())));
  }
  return ck.report;
}

RuleReport check_basic_diagram(const std::string& name, BasicRule rule,
                               const std::function<Diagram(Rng&)>& gen,
                               const SelfCheckOptions& opt) {
  Checker ck(name, opt);
  Rng rng(opt.seed);
  for (int i = 0; i < opt.cases; ++i) {
    const Diagram d = gen(rng);
    const auto locs = match_basic(d, rule);
    if (locs.empty()) {
      ck.fail();
      continue;
    }
    ck.run_case(eval_diagram(d), eval_diagram(apply_basic(d, rule, locs.front())));
  }
  return ck.report;
}

} // namespace

std::vector<std::string> selfcheck_units() {
  return {"Elim", "omega", "HH",  "Case", "fourier_transform", "hyper_local_complement",
          "hyper_pivot", "fourier_hyper_pivot", "case_hyper_pivot", "ZS1", "ZS2", "HS1",
          "HS2",  "BA1",  "BA2", "M",    "U",   "I",  "A",  "O",  "normalize",
          "roundtrip_pathsum", "roundtrip_diagram"};
}

RuleReport check_unit(const std::string& unit, const SelfCheckOptions& opt) {
  if (unit == "Elim")
    return check_pathsum_rule(unit, PSRule::Elim, [](Rng& r) { return random_elim_instance(r); },
                              opt);
  if (unit == "omega")
    return check_pathsum_rule(unit, PSRule::Omega, [](Rng& r) { return random_omega_instance(r); },
                              opt);
  if (unit == "HH")
    return check_pathsum_rule(unit, PSRule::HH, [](Rng& r) { return random_hh_instance(r); }, opt);
  if (unit == "Case")
    return check_pathsum_rule(unit, PSRule::Case, [](Rng& r) { return random_case_instance(r); },
                              opt);
  if (unit == "fourier_transform")
    return check_graph_rule(
        unit, [](Rng& r) { return random_ft_instance(r); },
        [](const Diagram& d) {
          const auto ms = match_fourier_transform(d);
          if (ms.empty()) throw Error("fourier_transform: no match");
          return fourier_transform(d, ms.front());
        },
        opt);
  if (unit == "hyper_local_complement")
    return check_graph_rule(
        unit, [](Rng& r) { return random_hlc_instance(r); },
        [](const Diagram& d) {
          const auto ms = match_hyper_local_complement(d);
          if (ms.empty()) throw Error("hlc: no match");
          return hyper_local_complement(d, ms.front());
        },
        opt);
  if (unit == "hyper_pivot")
    return check_graph_rule(
        unit, [](Rng& r) { return random_hp_instance(r); },
        [](const Diagram& d) {
          const auto ms = match_hyper_pivot(d);
          if (ms.empty()) throw Error("hp: no match");
          return hyper_pivot(d, ms.front());
        },
        opt);
  if (unit == "fourier_hyper_pivot")
    return check_graph_rule(
        unit, [](Rng& r) { return random_fhp_instance(r); },
        [](const Diagram& d) {
          const auto ms = match_fourier_hyper_pivot(d);
          if (ms.empty()) throw Error("fhp: no match");
          return fourier_hyper_pivot(d, ms.front());
        },
        opt);
  if (unit == "case_hyper_pivot")
    return check_graph_rule(
        unit, [](Rng& r) { return random_chp_instance(r); },
        [](const Diagram& d) {
          const auto ms = match_case_hyper_pivot(d);
          if (ms.empty()) throw Error("chp: no match");
          return case_hyper_pivot(d, ms.front());
        },
        opt);
  if (unit == "ZS1") return check_basic_raw(unit, BasicRule::ZS1, zs1_instance, opt);
  if (unit == "ZS2") return check_basic_raw(unit, BasicRule::ZS2, zs2_instance, opt);
  if (unit == "HS1") return check_basic_raw(unit, BasicRule::HS1, hs1_instance, opt);
  if (unit == "HS2") return check_basic_raw(unit, BasicRule::HS2, hs2_instance, opt);
  if (unit == "BA1") return check_basic_raw(unit, BasicRule::BA1, ba1_instance, opt);
  if (unit == "BA2") return check_basic_raw(unit, BasicRule::BA2, ba2_instance, opt);
  if (unit == "A")
    return check_basic_raw(unit, BasicRule::A, [](Rng& r) { return not_twin_instance(r, false); },
                           opt);
  if (unit == "O")
    return check_basic_raw(unit, BasicRule::O, [](Rng& r) { return not_twin_instance(r, true); },
                           opt);
  if (unit == "M") return check_basic_diagram(unit, BasicRule::M, m_instance, opt);
  if (unit == "U") return check_basic_diagram(unit, BasicRule::U, u_instance, opt);
  if (unit == "I") return check_basic_diagram(unit, BasicRule::I, i_instance, opt);
  if (unit == "normalize") {
    Checker ck(unit, opt);
    Rng rng(opt.seed);
    for (int i = 0; i < opt.cases; ++i) {
      const RawDiagram d = random_raw_diagram(rng);
      const Diagram n = normalize(d);
      if (n.validate()) {
        ck.fail();
        continue;
      }
      ck.run_case(eval_diagram(d), eval_diagram(n));
    }
    return ck.report;
  }
  if (unit == "roundtrip_pathsum") {
    Checker ck(unit, opt);
    Rng rng(opt.seed);
    for (int i = 0; i < opt.cases; ++i) {
      const PurePathSum e = random_pathsum(rng);
      ++ck.report.cases;
      bool ok = zh_to_pathsum(pathsum_to_zh(e)) == e;
      if (opt.inject_fault == unit) ok = false;
      if (!ok) ++ck.report.failures;
    }
    return ck.report;
  }
  if (unit == "roundtrip_diagram") {
    Checker ck(unit, opt);
    Rng rng(opt.seed);
    for (int i = 0; i < opt.cases; ++i) {
      const Diagram d = random_normalized_diagram(rng);
      ++ck.report.cases;
      bool ok = iso_equal(pathsum_to_zh(zh_to_pathsum(d)), d);
      if (opt.inject_fault == unit) ok = false;
      if (!ok) ++ck.report.failures;
    }
    return ck.report;
  }
  throw Error("unknown selfcheck unit '" + unit + "'");
}

std::vector<RuleReport> run_selfcheck(const SelfCheckOptions& opt) {
  std::vector<RuleReport> out;
  for (const auto& unit : selfcheck_units()) out.push_back(check_unit(unit, opt));
  return out;
}

} // namespace zhps
