#include "zhps/random_gen.hpp"

#include <algorithm>

#include "zhps/graph_rules.hpp"
#include "zhps/rules.hpp"

namespace zhps {

Phase Rng::phase(bool allow_half) {
  static const int dens[] = {2, 4, 8, 8, 8, 3};
  for (;;) {
    const int den = dens[range(0, 5)];
    const int num = range(1, den - 1);
    const Phase p = Phase::of(num, den);
    if (!allow_half && p == Phase::of(1, 2)) continue;
    return p;
  }
}

Phase Rng::odd_phase() {
  for (;;) {
    const Phase p = phase(false);
    if (!p.is_zero()) return p;
  }
}

namespace {

BoolMonomial random_monomial(Rng& rng, const std::vector<Var>& pool, int max_deg,
                             bool allow_empty = false) {
  const int lo = allow_empty ? 0 : 1;
  const int deg = rng.range(lo, std::min<int>(max_deg, static_cast<int>(pool.size())));
  std::vector<Var> picked = pool;
  std::shuffle(picked.begin(), picked.end(), rng.eng);
  picked.resize(deg);
  return BoolMonomial(picked);
}

std::set<SpiderId> random_subset(Rng& rng, const std::vector<SpiderId>& pool, int lo, int hi) {
  const int n = rng.range(lo, std::min<int>(hi, static_cast<int>(pool.size())));
  std::vector<SpiderId> picked = pool;
  std::shuffle(picked.begin(), picked.end(), rng.eng);
  picked.resize(n);
  return std::set<SpiderId>(picked.begin(), picked.end());
}

ScalarFactor random_scalar(Rng& rng) {
  ScalarFactor s = ScalarFactor::pow2_halves(rng.range(-4, 4));
  if (rng.chance(0.7)) s.mul_phase(rng.phase());
  return s;
}

// Adds a box with a neighborhood not already present; false when the slot
// could not be found.
bool add_fresh_box(Rng& rng, Diagram& d, const HLabel& label, const std::vector<SpiderId>& pool,
                   int lo, int hi, const std::set<SpiderId>& forced = {}) {
  for (int tries = 0; tries < 24; ++tries) {
    std::set<SpiderId> nbrs = random_subset(rng, pool, lo, hi);
    nbrs.insert(forced.begin(), forced.end());
    if (nbrs.empty()) continue;
    if (!d.find_box_with_neighbors(nbrs)) {
      d.add_hbox(label, nbrs);
      return true;
    }
  }
  return false;
}

} // namespace

PurePathSum random_pathsum(Rng& rng, int max_vars, int max_terms) {
  PurePathSum e;
  const int k = rng.range(1, max_vars);
  std::vector<Var> pool;
  for (int v = 1; v <= k; ++v) {
    e.add_var(v);
    pool.push_back(v);
  }
  const int t = rng.range(0, max_terms);
  for (int i = 0; i < t; ++i) e.add_phase(rng.phase(), random_monomial(rng, pool, 3));
  auto sig = [&] {
    std::vector<Var> s;
    const int len = rng.range(0, 3);
    for (int i = 0; i < len; ++i) s.push_back(pool[static_cast<std::size_t>(rng.range(0, k - 1))]);
    return s;
  };
  e.set_input_sig(sig());
  e.set_output_sig(sig());
  e.set_scalar(random_scalar(rng));
  return e;
}

Diagram random_normalized_diagram(Rng& rng, int max_spiders, int max_boxes) {
  Diagram d;
  const int s = rng.range(1, max_spiders);
  std::vector<SpiderId> pool;
  for (int i = 0; i < s; ++i) pool.push_back(d.add_spider());
  const int b = rng.range(0, max_boxes);
  for (int i = 0; i < b; ++i) add_fresh_box(rng, d, HLabel::from_phase(rng.phase()), pool, 1, 3);
  auto sig = [&] {
    std::vector<SpiderId> out;
    const int len = rng.range(0, 3);
    for (int i = 0; i < len; ++i)
      out.push_back(pool[static_cast<std::size_t>(rng.range(0, s - 1))]);
    return out;
  };
  d.set_inputs(sig());
  d.set_outputs(sig());
  d.set_scalar(random_scalar(rng));
  return d;
}

RawDiagram random_raw_diagram(Rng& rng) {
  // Layered construction over a set of open wires, so the wiring is always
  // legal and loop-free.
  RawDiagram d;
  std::vector<int> open;
  const int n_in = rng.range(0, 3);
  for (int i = 0; i < n_in; ++i) {
    const int w = d.fresh_wire();
    open.push_back(w);
    d.mutable_inputs().push_back(w);
  }
  const int ops = rng.range(1, 7);
  for (int i = 0; i < ops; ++i) {
    if (static_cast<int>(d.wire_count()) > 11) break;
    const int kind = rng.range(0, 9);
    std::shuffle(open.begin(), open.end(), rng.eng);
    const int avail = static_cast<int>(open.size());
    auto take = [&](int n) {
      std::vector<int> ws(open.end() - n, open.end());
      open.resize(open.size() - static_cast<std::size_t>(n));
      return ws;
    };
    auto emit = [&](int n) {
      std::vector<int> ws;
      for (int j = 0; j < n; ++j) {
        ws.push_back(d.fresh_wire());
        open.push_back(ws.back());
      }
      return ws;
    };
    if (kind <= 2) { // Z-spider
      const int c = rng.range(0, std::min(2, avail)), p = rng.range(c == 0 ? 1 : 0, 2);
      d.add_gen(GenKind::ZSpider, take(c), emit(p));
    } else if (kind <= 5) { // H-box
      const int c = rng.range(0, std::min(2, avail)), p = rng.range(c == 0 ? 1 : 0, 2);
      HLabel label = HLabel::minus_one();
      if (rng.chance(0.4)) label = HLabel::from_phase(rng.phase());
      if (rng.chance(0.1)) label = HLabel::general({rng.chance(0.5) ? 0.0 : 2.0, 0.0});
      d.add_gen(GenKind::HBox, take(c), emit(p), label);
    } else if (kind == 6) { // X-spider
      const int c = rng.range(0, std::min(2, avail)), p = rng.range(c == 0 ? 1 : 0, 2);
      d.add_gen(GenKind::XSpider, take(c), emit(p));
    } else if (kind == 7 && avail >= 1) { // NOT
      d.add_gen(GenKind::Not, take(1), emit(1));
    } else if (kind == 8 && avail >= 1) { // Hadamard
      d.add_gen(GenKind::Hadamard, take(1), emit(1));
    } else { // arity-0 scalar generator
      if (rng.chance(0.5))
        d.add_gen(GenKind::ZSpider, {}, {});
      else
        d.add_gen(GenKind::HBox, {}, {}, HLabel::from_phase(rng.phase()));
    }
  }
  d.mutable_outputs() = open;
  d.check_wiring();
  return d;
}

Circuit random_circuit(Rng& rng, int width, int gates, const std::vector<GateKind>& kinds) {
  Circuit c;
  c.width = width;
  std::vector<GateKind> usable;
  for (GateKind k : kinds) {
    Gate probe;
    probe.kind = k;
    if (probe.arity() <= width) usable.push_back(k);
  }
  if (usable.empty()) return c;
  for (int i = 0; i < gates; ++i) {
    Gate g;
    g.kind = usable[static_cast<std::size_t>(rng.range(0, static_cast<int>(usable.size()) - 1))];
    if (g.kind == GateKind::RZ) g.phase = rng.phase();
    std::vector<int> qs;
    for (int q = 0; q < width; ++q) qs.push_back(q);
    std::shuffle(qs.begin(), qs.end(), rng.eng);
    qs.resize(static_cast<std::size_t>(g.arity()));
    g.qubits = qs;
    c.gates.push_back(g);
  }
  return c;
}

PurePathSum random_elim_instance(Rng& rng) {
  PurePathSum e = random_pathsum(rng, 5, 6);
  e.fresh_var();
  return e;
}

PurePathSum random_omega_instance(Rng& rng) {
  PurePathSum e = random_pathsum(rng, 4, 4);
  const std::vector<Var> pool(e.vars().begin(), e.vars().end());
  const Var y0 = e.fresh_var();
  e.add_phase(rng.chance(0.5) ? Phase::of(1, 4) : Phase::of(3, 4), BoolMonomial({y0}));
  const int couplings = rng.range(0, 3);
  std::set<BoolMonomial> used;
  for (int i = 0; i < couplings; ++i) {
    const BoolMonomial m = random_monomial(rng, pool, 2);
    if (!used.insert(m).second) continue;
    e.add_phase(Phase::of(1, 2), m.with(y0));
  }
  return e;
}

PurePathSum random_hh_instance(Rng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    PurePathSum e;
    const int nx = rng.range(2, 4);
    std::vector<Var> pool;
    for (int v = 1; v <= nx; ++v) {
      e.add_var(v);
      pool.push_back(v);
    }
    const bool retarget = rng.chance(0.4);
    const Var y1 = e.fresh_var();
    const Var y0 = e.fresh_var();
    e.add_phase(Phase::of(1, 2), BoolMonomial({y0, y1}));
    if (retarget) {
      // Q must be a single variable for the signature variant.
      const Var z = pool[static_cast<std::size_t>(rng.range(0, nx - 1))];
      e.add_phase(Phase::of(1, 2), BoolMonomial({y0, z}));
      std::vector<Var> out = {y1};
      if (rng.chance(0.5)) out.push_back(pool[0]);
      e.set_output_sig(out);
      e.set_input_sig({pool[0], pool[static_cast<std::size_t>(rng.range(0, nx - 1))]});
    } else {
      const int couplings = rng.range(0, 3);
      for (int i = 0; i < couplings; ++i)
        e.add_phase(Phase::of(1, 2), random_monomial(rng, pool, 2, true).with(y0));
      // R may mention y1 freely.
      std::vector<Var> rpool = pool;
      rpool.push_back(y1);
      const int rterms = rng.range(0, 4);
      for (int i = 0; i < rterms; ++i) e.add_phase(rng.phase(), random_monomial(rng, rpool, 3));
      e.set_input_sig({pool[0]});
      e.set_output_sig({pool[static_cast<std::size_t>(rng.range(0, nx - 1))]});
    }
    e.set_scalar(random_scalar(rng));
    // The construction may have merged terms; accept only if the matcher
    // still fires on (y0, y1).
    for (const auto& m : match_hh(e))
      if (m.y0 == y0 && m.y1 == y1) return e;
  }
  throw Error("random_hh_instance: could not build an instance");
}

PurePathSum random_case_instance(Rng& rng) {
  for (int tries = 0; tries < 128; ++tries) {
    PurePathSum e;
    const int nx = rng.range(2, 4);
    std::vector<Var> pool;
    for (int v = 1; v <= nx; ++v) {
      e.add_var(v);
      pool.push_back(v);
    }
    const Var y0 = e.fresh_var();
    const Var y1 = e.fresh_var();
    e.add_phase(Phase::of(1, 2), BoolMonomial({y0, y1}));

    const BoolMonomial gate = random_monomial(rng, pool, 2);
    std::vector<Var> off_gate;
    for (Var v : pool)
      if (!gate.contains(v)) off_gate.push_back(v);

    const int n_alpha = rng.range(0, 2);
    for (int i = 0; i < n_alpha; ++i)
      e.add_phase(rng.odd_phase(), gate.times(random_monomial(rng, pool, 1, true)).with(y0));
    const int n_beta = rng.range(n_alpha == 0 ? 1 : 0, 2);
    for (int i = 0; i < n_beta; ++i) {
      const Phase beta = rng.odd_phase();
      const BoolMonomial n = random_monomial(rng, off_gate, 1, true);
      e.add_phase(beta, n.with(y1));
      e.add_phase(-beta, n.times(gate).with(y1));
    }
    const int nq = rng.range(0, 2);
    for (int i = 0; i < nq; ++i)
      e.add_phase(Phase::of(1, 2), random_monomial(rng, pool, 2).with(y0));
    const int nqp = rng.range(0, 2);
    for (int i = 0; i < nqp; ++i)
      e.add_phase(Phase::of(1, 2), random_monomial(rng, pool, 2).with(y1));
    const int rterms = rng.range(0, 3);
    for (int i = 0; i < rterms; ++i) e.add_phase(rng.phase(), random_monomial(rng, pool, 2));
    e.set_input_sig({pool[0]});
    e.set_output_sig({pool[static_cast<std::size_t>(rng.range(0, nx - 1))]});
    e.set_scalar(random_scalar(rng));
    for (const auto& m : match_case(e))
      if ((m.y0 == y0 && m.y1 == y1) || (m.y0 == y1 && m.y1 == y0)) return e;
  }
  throw Error("random_case_instance: could not build an instance");
}

namespace {

struct DiagramSkeleton {
  Diagram d;
  std::vector<SpiderId> pool;
};

DiagramSkeleton skeleton(int pool_size) {
  DiagramSkeleton s;
  for (int i = 0; i < pool_size; ++i) s.pool.push_back(s.d.add_spider());
  return s;
}

void finish_boundary(Rng& rng, Diagram& d, const std::vector<SpiderId>& pool) {
  auto sig = [&] {
    std::vector<SpiderId> out;
    const int len = rng.range(1, std::min<int>(3, static_cast<int>(pool.size())));
    for (int i = 0; i < len; ++i)
      out.push_back(pool[static_cast<std::size_t>(rng.range(0, static_cast<int>(pool.size()) - 1))]);
    return out;
  };
  d.set_inputs(sig());
  d.set_outputs(sig());
  if (rng.chance(0.5)) d.set_scalar(random_scalar(rng));
}

} // namespace

Diagram random_hlc_instance(Rng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    auto [d, pool] = skeleton(rng.range(3, 5));
    const SpiderId u = d.add_spider();
    d.add_hbox(HLabel::from_phase(rng.chance(0.5) ? Phase::of(1, 4) : Phase::of(3, 4)), {u});
    const int k = rng.range(1, 3);
    for (int i = 0; i < k; ++i)
      add_fresh_box(rng, d, HLabel::minus_one(), pool, 1, 2, {u});
    const int ctx = rng.range(0, 2);
    for (int i = 0; i < ctx; ++i) add_fresh_box(rng, d, HLabel::from_phase(rng.phase()), pool, 1, 2);
    finish_boundary(rng, d, pool);
    bool found = false;
    for (const auto& m : match_hyper_local_complement(d)) found |= m.u == u;
    if (found) return d;
  }
  throw Error("random_hlc_instance: could not build an instance");
}

namespace {

Diagram pivot_instance(Rng& rng, bool fourier, bool case_style) {
  for (int tries = 0; tries < 128; ++tries) {
    auto [d, pool] = skeleton(rng.range(3, 5));
    const SpiderId u = d.add_spider();
    const SpiderId v = d.add_spider();
    const HBoxId h = d.add_hbox(HLabel::minus_one(), {u, v});
    const int nu = rng.range(case_style ? 0 : 1, 2);
    for (int i = 0; i < nu; ++i) add_fresh_box(rng, d, HLabel::minus_one(), pool, 0, 2, {u});
    const int nv = rng.range(0, 2);
    for (int i = 0; i < nv; ++i) {
      HLabel label = HLabel::minus_one();
      if (fourier && rng.chance(0.8)) label = HLabel::from_phase(rng.phase());
      add_fresh_box(rng, d, label, pool, 0, 2, {v});
    }
    if (case_style) {
      // One gated box on u and a complement pair on v.
      const std::set<SpiderId> gate = random_subset(rng, pool, 1, 2);
      std::vector<SpiderId> off;
      for (SpiderId s : pool)
        if (!gate.count(s)) off.push_back(s);
      std::set<SpiderId> a_nbrs = gate;
      a_nbrs.insert(u);
      if (d.find_box_with_neighbors(a_nbrs)) continue;
      d.add_hbox(HLabel::from_phase(rng.odd_phase()), a_nbrs);
      if (rng.chance(0.7)) {
        const Phase beta = rng.odd_phase();
        std::set<SpiderId> base = random_subset(rng, off, 0, 1);
        std::set<SpiderId> b1 = base;
        b1.insert(v);
        std::set<SpiderId> b2 = base;
        b2.insert(gate.begin(), gate.end());
        b2.insert(v);
        if (d.find_box_with_neighbors(b1) || d.find_box_with_neighbors(b2)) continue;
        d.add_hbox(HLabel::from_phase(beta), b1);
        d.add_hbox(HLabel::from_phase(-beta), b2);
      }
    }
    const int ctx = rng.range(0, 2);
    for (int i = 0; i < ctx; ++i) add_fresh_box(rng, d, HLabel::from_phase(rng.phase()), pool, 1, 2);
    finish_boundary(rng, d, pool);
    if (case_style) {
      for (const auto& m : match_case_hyper_pivot(d))
        if (m.box == h) return d;
    } else if (fourier) {
      for (const auto& m : match_fourier_hyper_pivot(d))
        if (m.box == h) return d;
    } else {
      for (const auto& m : match_hyper_pivot(d))
        if (m.box == h) return d;
    }
  }
  throw Error("pivot_instance: could not build an instance");
}

} // namespace

Diagram random_hp_instance(Rng& rng) { return pivot_instance(rng, false, false); }
Diagram random_fhp_instance(Rng& rng) { return pivot_instance(rng, true, false); }
Diagram random_chp_instance(Rng& rng) { return pivot_instance(rng, false, true); }

Diagram random_ft_instance(Rng& rng, int max_fanout) {
  for (int tries = 0; tries < 64; ++tries) {
    const int n = rng.range(1, max_fanout);
    auto [d, pool] = skeleton(n + rng.range(0, 1));
    const SpiderId p = d.add_spider();
    const SpiderId q = d.add_spider();
    const HBoxId f = d.add_hbox(HLabel::from_phase(rng.phase()), {q});
    d.add_hbox(HLabel::minus_one(), {p, q});
    for (int i = 0; i < n; ++i) d.add_hbox(HLabel::minus_one(), {p, pool[static_cast<std::size_t>(i)]});
    const int ctx = rng.range(0, 2);
    for (int i = 0; i < ctx; ++i) add_fresh_box(rng, d, HLabel::from_phase(rng.phase()), pool, 1, 2);
    finish_boundary(rng, d, pool);
    if (match_fourier_transform_at(d, f)) return d;
  }
  throw Error("random_ft_instance: could not build an instance");
}

} // namespace zhps
