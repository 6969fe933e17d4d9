#include <algorithm>
#include <functional>
#include <map>

#include "zhps/diagram.hpp"

namespace zhps {

namespace {

struct WGen {
  bool is_spider{true};
  HLabel label{};
  std::vector<int> legs;
  bool dead{false};
};

struct Work {
  std::vector<WGen> gens;
  std::vector<int> in_slots, out_slots;
  ScalarFactor scalar;
  int next_wire{0};

  std::map<int, int> parent;
  int find(int w) {
    auto it = parent.find(w);
    if (it == parent.end() || it->second == w) return w;
    const int root = find(it->second);
    parent[w] = root;
    return root;
  }
  void unite(int a, int b) {
    const int ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  int fresh() { return next_wire++; }

  void canonical_wires() {
    for (auto& g : gens)
      for (auto& w : g.legs) w = find(w);
    for (auto& w : in_slots) w = find(w);
    for (auto& w : out_slots) w = find(w);
  }

  // Occurrence count of a wire among live generator legs and boundary slots.
  int occurrences(int w) {
    w = find(w);
    int c = 0;
    for (const auto& g : gens) {
      if (g.dead) continue;
      for (int lw : g.legs)
        if (find(lw) == w) ++c;
    }
    for (int lw : in_slots)
      if (find(lw) == w) ++c;
    for (int lw : out_slots)
      if (find(lw) == w) ++c;
    return c;
  }
};

// Step 1: expand derived generators so only Z-spiders and H-boxes remain.
Work expand(const RawDiagram& d) {
  Work w;
  w.scalar = d.scalar();
  w.in_slots = d.input_wires();
  w.out_slots = d.output_wires();
  int max_wire = -1;
  auto track = [&](const std::vector<int>& ws) {
    for (int x : ws) max_wire = std::max(max_wire, x);
  };
  for (const auto& g : d.gens()) {
    track(g.in_wires);
    track(g.out_wires);
  }
  track(d.input_wires());
  track(d.output_wires());
  w.next_wire = max_wire + 1;

  for (const auto& g : d.gens()) {
    std::vector<int> legs = g.in_wires;
    legs.insert(legs.end(), g.out_wires.begin(), g.out_wires.end());
    switch (g.kind) {
      case GenKind::ZSpider:
        w.gens.push_back({true, HLabel(), legs, false});
        break;
      case GenKind::HBox:
        w.gens.push_back({false, g.label, legs, false});
        break;
      case GenKind::Hadamard:
        w.gens.push_back({false, HLabel::minus_one(), legs, false});
        break;
      case GenKind::Not: {
        // H . Z(pi) . H with a tracked factor 1/2.
        if (legs.size() != 2) throw Error("NOT generator must have arity 2");
        const int a = legs[0], b = legs[1];
        const int m1 = w.fresh(), m2 = w.fresh(), ph = w.fresh();
        w.gens.push_back({false, HLabel::minus_one(), {a, m1}, false});
        w.gens.push_back({true, HLabel(), {m1, ph, m2}, false});
        w.gens.push_back({false, HLabel::minus_one(), {ph}, false});
        w.gens.push_back({false, HLabel::minus_one(), {m2, b}, false});
        w.scalar.mul_pow2_halves(-2);
        break;
      }
      case GenKind::XSpider: {
        // Z-spider with a Hadamard on every leg; 2^{-(m+n)/2}.
        std::vector<int> inner;
        for (int leg : legs) {
          const int m = w.fresh();
          w.gens.push_back({false, HLabel::minus_one(), {leg, m}, false});
          inner.push_back(m);
        }
        w.gens.push_back({true, HLabel(), inner, false});
        w.scalar.mul_pow2_halves(-static_cast<std::int64_t>(legs.size()));
        break;
      }
    }
  }
  return w;
}

// Step 2a: an H-box with two legs on the same wire traces down to an H-box of
// arity minus two with label (1+a)/2 and a factor 2.
void remove_box_self_loops(Work& w) {
  for (auto& g : w.gens) {
    if (g.dead || g.is_spider) continue;
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = 0; i < g.legs.size() && !again; ++i)
        for (std::size_t j = i + 1; j < g.legs.size(); ++j)
          if (w.find(g.legs[i]) == w.find(g.legs[j])) {
            g.legs.erase(g.legs.begin() + static_cast<std::ptrdiff_t>(j));
            g.legs.erase(g.legs.begin() + static_cast<std::ptrdiff_t>(i));
            g.label = HLabel::from_complex((1.0 + g.label.value()) / 2.0);
            w.scalar.mul_pow2_halves(2);
            again = true;
            break;
          }
    }
  }
}

// Step 2b: cancel pairs of unlabeled arity-2 H-boxes in direct series
// (the double Hadamards the expansion introduces); each pair contributes 2.
void cancel_double_hadamards(Work& w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.gens.size() && !changed; ++i) {
      auto& a = w.gens[i];
      if (a.dead || a.is_spider || a.legs.size() != 2 || !a.label.is_unlabeled()) continue;
      for (std::size_t j = i + 1; j < w.gens.size() && !changed; ++j) {
        auto& b = w.gens[j];
        if (b.dead || b.is_spider || b.legs.size() != 2 || !b.label.is_unlabeled()) continue;
        int shared = -1;
        for (int wa : a.legs)
          for (int wb : b.legs)
            if (w.find(wa) == w.find(wb)) shared = w.find(wa);
        if (shared < 0) continue;
        const int pa = w.find(a.legs[0]) == shared ? w.find(a.legs[1]) : w.find(a.legs[0]);
        const int pb = w.find(b.legs[0]) == shared ? w.find(b.legs[1]) : w.find(b.legs[0]);
        a.dead = b.dead = true;
        w.scalar.mul_pow2_halves(2);
        if (pa == pb) {
          // The two boxes formed a bigon; the leftover wire closes into a loop.
          w.scalar.mul_pow2_halves(2);
        } else {
          w.unite(pa, pb);
          if (w.occurrences(pa) == 0) w.scalar.mul_pow2_halves(2);
        }
        changed = true;
      }
    }
  }
}

// Step 3: fuse spiders across spider-spider wires; wires internal to a fused
// class (including self-loops) are dropped outright.
void fuse_spiders(Work& w) {
  w.canonical_wires();
  // Map wire -> spider gen indices touching it.
  std::map<int, std::vector<std::size_t>> spider_ports;
  for (std::size_t i = 0; i < w.gens.size(); ++i) {
    if (w.gens[i].dead || !w.gens[i].is_spider) continue;
    for (int lw : w.gens[i].legs) spider_ports[w.find(lw)].push_back(i);
  }
  // Union-find over spider gens.
  std::vector<std::size_t> sp(w.gens.size());
  for (std::size_t i = 0; i < sp.size(); ++i) sp[i] = i;
  std::function<std::size_t(std::size_t)> sfind = [&](std::size_t i) -> std::size_t {
    while (sp[i] != i) {
      sp[i] = sp[sp[i]];
      i = sp[i];
    }
    return i;
  };
  for (const auto& [wire, ports] : spider_ports)
    if (ports.size() == 2) {
      const std::size_t a = sfind(ports[0]), b = sfind(ports[1]);
      if (a != b) sp[std::max(a, b)] = std::min(a, b);
    }
  // Rebuild: class root collects all legs except wires internal to the class.
  std::map<std::size_t, std::vector<int>> merged;
  for (std::size_t i = 0; i < w.gens.size(); ++i) {
    if (w.gens[i].dead || !w.gens[i].is_spider) continue;
    auto& legs = merged[sfind(i)];
    legs.insert(legs.end(), w.gens[i].legs.begin(), w.gens[i].legs.end());
  }
  for (auto& [root, legs] : merged) {
    // Wires with both endpoints inside the class (fusion wires and
    // self-loops) disappear; the rest become the merged spider's legs.
    std::vector<int> kept;
    for (int lw : legs) {
      const int cw = w.find(lw);
      const auto it = spider_ports.find(cw);
      const bool internal = it != spider_ports.end() && it->second.size() == 2 &&
                            sfind(it->second[0]) == sfind(it->second[1]);
      if (!internal) kept.push_back(cw);
    }
    for (std::size_t i = 0; i < w.gens.size(); ++i)
      if (!w.gens[i].dead && w.gens[i].is_spider && sfind(i) == root && i != root)
        w.gens[i].dead = true;
    w.gens[root].legs = kept;
  }
}

} // namespace

Diagram normalize(const RawDiagram& d) {
  d.check_wiring();
  Work w = expand(d);
  remove_box_self_loops(w);
  cancel_double_hadamards(w);
  remove_box_self_loops(w);
  fuse_spiders(w);
  w.canonical_wires();

  // Step 4: every remaining wire must run between an H-box and a spider.
  // Boundary slots and box-box wires get fresh identity spiders.
  struct End {
    enum Kind { Spider, Box, Boundary } kind;
    std::size_t gen;
  };
  auto collect_ends = [&](int wire) {
    std::vector<End> ends;
    for (std::size_t i = 0; i < w.gens.size(); ++i) {
      if (w.gens[i].dead) continue;
      for (int lw : w.gens[i].legs)
        if (lw == wire) ends.push_back({w.gens[i].is_spider ? End::Spider : End::Box, i});
    }
    for (int lw : w.in_slots)
      if (lw == wire) ends.push_back({End::Boundary, 0});
    for (int lw : w.out_slots)
      if (lw == wire) ends.push_back({End::Boundary, 0});
    return ends;
  };

  std::set<int> wires;
  for (const auto& g : w.gens) {
    if (g.dead) continue;
    wires.insert(g.legs.begin(), g.legs.end());
  }
  wires.insert(w.in_slots.begin(), w.in_slots.end());
  wires.insert(w.out_slots.begin(), w.out_slots.end());

  for (int wire : std::vector<int>(wires.begin(), wires.end())) {
    auto ends = collect_ends(wire);
    if (ends.size() != 2) throw Error("normalize: wire with " + std::to_string(ends.size()) + " ends");
    const bool a_sp = ends[0].kind == End::Spider, b_sp = ends[1].kind == End::Spider;
    if (a_sp && b_sp) throw Error("normalize: residual spider-spider wire");
    if (a_sp || b_sp) continue;
    // box-box, box-boundary or boundary-boundary: insert an identity spider.
    const int w1 = w.fresh(), w2 = w.fresh();
    w.gens.push_back({true, HLabel(), {w1, w2}, false});
    int replaced = 0;
    auto replace_in = [&](std::vector<int>& ws) {
      for (auto& x : ws)
        if (x == wire && replaced < 2) x = (replaced++ == 0 ? w1 : w2);
    };
    for (auto& g : w.gens) {
      if (g.dead) continue;
      replace_in(g.legs);
    }
    replace_in(w.in_slots);
    replace_in(w.out_slots);
  }

  // Step 5: assemble the hypergraph. Spider gens become spiders; each box leg
  // points at the spider on the wire's other end.
  Diagram out;
  out.set_scalar(w.scalar);
  std::map<int, SpiderId> spider_of_wire;
  for (std::size_t i = 0; i < w.gens.size(); ++i) {
    if (w.gens[i].dead || !w.gens[i].is_spider) continue;
    const SpiderId s = out.add_spider();
    for (int lw : w.gens[i].legs) spider_of_wire[lw] = s;
  }

  for (std::size_t i = 0; i < w.gens.size(); ++i) {
    if (w.gens[i].dead || w.gens[i].is_spider) continue;
    MultiEdge edge;
    edge.label = w.gens[i].label;
    for (int lw : w.gens[i].legs) {
      auto it = spider_of_wire.find(lw);
      if (it == spider_of_wire.end()) throw Error("normalize: box wire without spider end");
      edge.neighbors.push_back(it->second);
    }
    for (SpiderId s : std::set<SpiderId>(edge.neighbors.begin(), edge.neighbors.end()))
      reduce_parallel(edge, s);
    if (edge.neighbors.empty()) {
      // Arity-0 box: its label is the scalar.
      const HLabel& l = edge.label;
      if (l.is_one()) continue;
      if (l.is_phase())
        out.scalar().mul_phase(l.phase());
      else
        out.scalar().mul_extra(l.value());
      continue;
    }
    out.add_hbox(edge.label, std::set<SpiderId>(edge.neighbors.begin(), edge.neighbors.end()));
  }

  std::vector<SpiderId> ins, outs;
  for (int lw : w.in_slots) ins.push_back(spider_of_wire.at(lw));
  for (int lw : w.out_slots) outs.push_back(spider_of_wire.at(lw));
  out.set_inputs(ins);
  out.set_outputs(outs);

  // After detachment a spider with no incident box and no boundary role has
  // no legs at all: it is the arity-0 Z-spider, the scalar 2.
  for (SpiderId s : std::vector<SpiderId>(out.spiders().begin(), out.spiders().end())) {
    if (out.on_boundary(s)) continue;
    if (!out.boxes_on(s).empty()) continue;
    out.scalar().mul_pow2_halves(2);
    out.remove_spider(s);
  }

  // Step 6: duplicate-neighborhood fusion; labels multiply, 1-labeled boxes
  // are deleted.
  bool fused = true;
  while (fused) {
    fused = false;
    std::map<std::set<SpiderId>, HBoxId> seen;
    for (const auto& [id, box] : out.hboxes()) {
      auto [it, inserted] = seen.try_emplace(box.neighbors, id);
      if (!inserted) {
        const HBoxId keep = it->second;
        const HLabel merged = out.hboxes().at(keep).label.times(box.label);
        const std::set<SpiderId> nbrs = box.neighbors;
        out.remove_hbox(id);
        out.remove_hbox(keep);
        if (!merged.is_one()) out.add_hbox(merged, nbrs);
        fused = true;
        break;
      }
    }
  }

  return out;
}

} // namespace zhps
