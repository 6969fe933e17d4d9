#include <algorithm>
#include <map>
#include <set>

#include "zhps/graph_rules.hpp"

namespace zhps {

std::string rule_name(BasicRule r) {
  switch (r) {
    case BasicRule::ZS1: return "ZS1";
    case BasicRule::ZS2: return "ZS2";
    case BasicRule::HS1: return "HS1";
    case BasicRule::HS2: return "HS2";
    case BasicRule::BA1: return "BA1";
    case BasicRule::BA2: return "BA2";
    case BasicRule::M: return "M";
    case BasicRule::U: return "U";
    case BasicRule::I: return "I";
    case BasicRule::A: return "A";
    case BasicRule::O: return "O";
  }
  return "?";
}

namespace {

std::vector<int> all_legs(const RawDiagram::Gen& g) {
  std::vector<int> legs = g.in_wires;
  legs.insert(legs.end(), g.out_wires.begin(), g.out_wires.end());
  return legs;
}

int shared_wire_count(const RawDiagram::Gen& a, const RawDiagram::Gen& b) {
  int n = 0;
  for (int w : all_legs(a))
    for (int w2 : all_legs(b))
      if (w == w2) ++n;
  return n;
}

void replace_wire(RawDiagram& d, int from, int to) {
  for (auto& g : d.mutable_gens()) {
    for (auto& w : g.in_wires)
      if (w == from) w = to;
    for (auto& w : g.out_wires)
      if (w == from) w = to;
  }
  for (auto& w : d.mutable_inputs())
    if (w == from) w = to;
  for (auto& w : d.mutable_outputs())
    if (w == from) w = to;
}

void erase_gens(RawDiagram& d, std::vector<int> idx) {
  std::sort(idx.rbegin(), idx.rend());
  for (int i : idx)
    d.mutable_gens().erase(d.mutable_gens().begin() + i);
}

int wire_occurrences(const RawDiagram& d, int w) {
  int n = 0;
  for (const auto& g : d.gens())
    for (int lw : all_legs(g))
      if (lw == w) ++n;
  for (int lw : d.input_wires())
    if (lw == w) ++n;
  for (int lw : d.output_wires())
    if (lw == w) ++n;
  return n;
}

bool is_unlabeled_h2(const RawDiagram::Gen& g) {
  return (g.kind == GenKind::HBox && g.label.is_unlabeled() && g.arity() == 2) ||
         g.kind == GenKind::Hadamard;
}

// The spider id at the far end of `wire` as seen from generator `self`;
// -1 when the far end is not a Z-spider.
int far_spider(const RawDiagram& d, int wire, int self) {
  for (int i = 0; i < static_cast<int>(d.gens().size()); ++i) {
    if (i == self) continue;
    for (int lw : all_legs(d.gens()[i]))
      if (lw == wire) return d.gens()[i].kind == GenKind::ZSpider ? i : -1;
  }
  return -1;
}

// Pairs the non-anchor legs of two boxes through shared spiders; the sets of
// far spiders must coincide and be duplicate-free.
bool paired_far_spiders(const RawDiagram& d, int box_a, int wa, int box_b, int wb,
                        std::vector<int>* spiders_out, std::vector<int>* b_wires_out) {
  std::set<int> sa, sb;
  std::vector<int> b_wires;
  for (int w : all_legs(d.gens()[box_a])) {
    if (w == wa) continue;
    const int s = far_spider(d, w, box_a);
    if (s < 0 || sa.count(s)) return false;
    sa.insert(s);
  }
  for (int w : all_legs(d.gens()[box_b])) {
    if (w == wb) continue;
    const int s = far_spider(d, w, box_b);
    if (s < 0 || sb.count(s)) return false;
    sb.insert(s);
    b_wires.push_back(w);
  }
  if (sa != sb) return false;
  if (spiders_out) spiders_out->assign(sa.begin(), sa.end());
  if (b_wires_out) *b_wires_out = b_wires;
  return true;
}

void drop_leg(RawDiagram::Gen& g, int wire) {
  auto drop = [&](std::vector<int>& ws) {
    auto it = std::find(ws.begin(), ws.end(), wire);
    if (it != ws.end()) {
      ws.erase(it);
      return true;
    }
    return false;
  };
  if (!drop(g.in_wires)) drop(g.out_wires);
}

} // namespace

std::vector<BasicLoc> match_basic(const RawDiagram& d, BasicRule r) {
  std::vector<BasicLoc> out;
  const auto& gens = d.gens();
  const int n = static_cast<int>(gens.size());
  switch (r) {
    case BasicRule::ZS1:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (gens[i].kind == GenKind::ZSpider && gens[j].kind == GenKind::ZSpider &&
              shared_wire_count(gens[i], gens[j]) >= 1)
            out.push_back({i, j, -1});
      break;
    case BasicRule::ZS2:
      for (int i = 0; i < n; ++i)
        if (gens[i].kind == GenKind::ZSpider && gens[i].arity() == 2) {
          const auto legs = all_legs(gens[i]);
          if (legs[0] != legs[1]) out.push_back({i, -1, -1});
        }
      break;
    case BasicRule::HS1:
      for (int i = 0; i < n; ++i)
        if (gens[i].kind == GenKind::HBox) out.push_back({i, -1, -1});
      break;
    case BasicRule::HS2:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (!is_unlabeled_h2(gens[i]) || !is_unlabeled_h2(gens[j])) continue;
          const auto la = all_legs(gens[i]), lb = all_legs(gens[j]);
          if (la[0] == la[1] || lb[0] == lb[1]) continue;
          if (shared_wire_count(gens[i], gens[j]) >= 1) out.push_back({i, j, -1});
        }
      break;
    case BasicRule::BA1:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (gens[i].kind == GenKind::ZSpider && gens[j].kind == GenKind::XSpider &&
              shared_wire_count(gens[i], gens[j]) == 1)
            out.push_back({i, j, -1});
      break;
    case BasicRule::BA2:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (gens[i].kind == GenKind::XSpider && is_unlabeled_h2(gens[j]) &&
              shared_wire_count(gens[i], gens[j]) == 1)
            out.push_back({i, j, -1});
      break;
    case BasicRule::A:
    case BasicRule::O:
      for (int i = 0; i < n; ++i) {
        if (gens[i].kind != GenKind::Not) continue;
        const auto nlegs = all_legs(gens[i]);
        // t carries the first NOT leg, t' the second.
        int t = -1, tp = -1;
        for (int k = 0; k < n; ++k) {
          if (gens[k].kind != GenKind::ZSpider) continue;
          for (int lw : all_legs(gens[k])) {
            if (lw == nlegs[0]) t = k;
            if (lw == nlegs[1]) tp = k;
          }
        }
        if (t < 0 || tp < 0 || t == tp) continue;
        if (gens[tp].arity() != 2) continue;
        const bool t_closed = r == BasicRule::A;
        if (t_closed && gens[t].arity() != 2) continue;
        if (!t_closed && gens[t].arity() < 2) continue;
        // Walk t's non-NOT legs to a labeled box; same for t'.
        auto box_off = [&](int spider, int avoid_wire) -> std::pair<int, int> {
          for (int lw : all_legs(gens[spider])) {
            if (lw == avoid_wire) continue;
            for (int k = 0; k < n; ++k) {
              if (k == spider || gens[k].kind != GenKind::HBox) continue;
              for (int bw : all_legs(gens[k]))
                if (bw == lw) return {k, lw};
            }
          }
          return {-1, -1};
        };
        const auto [ba, wa] = box_off(t, nlegs[0]);
        const auto [bb, wb] = box_off(tp, nlegs[1]);
        if (ba < 0 || bb < 0 || ba == bb) continue;
        if (r == BasicRule::O && std::abs(gens[bb].label.value()) == 0.0) continue;
        if (!paired_far_spiders(d, ba, wa, bb, wb, nullptr, nullptr)) continue;
        out.push_back({i, ba, bb});
      }
      break;
    case BasicRule::M:
    case BasicRule::U:
    case BasicRule::I:
      break; // hypergraph-form rules
  }
  return out;
}

RawDiagram apply_basic(const RawDiagram& d, BasicRule r, const BasicLoc& loc) {
  RawDiagram out = d;
  auto& gens = out.mutable_gens();
  switch (r) {
    case BasicRule::ZS1: {
      const auto la = all_legs(gens[loc.g1]), lb = all_legs(gens[loc.g2]);
      std::map<int, int> cnt;
      for (int w : la) cnt[w]++;
      for (int w : lb) cnt[w]++;
      std::vector<int> merged;
      for (int w : la)
        if (cnt[w] == 1) merged.push_back(w);
      for (int w : lb)
        if (cnt[w] == 1) merged.push_back(w);
      gens[loc.g1] = {GenKind::ZSpider, HLabel(), {}, merged};
      erase_gens(out, {loc.g2});
      break;
    }
    case BasicRule::ZS2: {
      const auto legs = all_legs(gens[loc.g1]);
      erase_gens(out, {loc.g1});
      replace_wire(out, legs[1], legs[0]);
      break;
    }
    case BasicRule::HS1: {
      // Unfuse: the labeled box hangs off a Hadamard-pair hub; factor 1/2.
      const RawDiagram::Gen box = gens[loc.g1];
      const auto legs = all_legs(box);
      erase_gens(out, {loc.g1});
      const int a1 = out.fresh_wire(), a2 = out.fresh_wire();
      const int b2 = out.fresh_wire(), b4 = out.fresh_wire();
      std::vector<int> hub_legs = {a1};
      hub_legs.insert(hub_legs.end(), legs.begin(), legs.end());
      out.add_gen(GenKind::HBox, {}, hub_legs, HLabel::minus_one());
      out.add_gen(GenKind::ZSpider, {}, {a1, a2});
      out.add_gen(GenKind::HBox, {}, {a2, b2}, HLabel::minus_one());
      out.add_gen(GenKind::ZSpider, {}, {b2, b4});
      out.add_gen(GenKind::HBox, {}, {b4}, box.label);
      out.scalar().mul_pow2_halves(-2);
      break;
    }
    case BasicRule::HS2: {
      const auto la = all_legs(gens[loc.g1]), lb = all_legs(gens[loc.g2]);
      int shared = -1;
      for (int w : la)
        for (int w2 : lb)
          if (w == w2) shared = w;
      const int pa = la[0] == shared ? la[1] : la[0];
      const int pb = lb[0] == shared ? lb[1] : lb[0];
      erase_gens(out, {loc.g1, loc.g2});
      out.scalar().mul_pow2_halves(2);
      if (pa == pb) {
        out.scalar().mul_pow2_halves(2); // bigon closes into a loop
      } else {
        replace_wire(out, pb, pa);
        if (wire_occurrences(out, pa) == 0) out.scalar().mul_pow2_halves(2);
      }
      break;
    }
    case BasicRule::BA1: {
      const auto lz = all_legs(gens[loc.g1]), lx = all_legs(gens[loc.g2]);
      int shared = -1;
      for (int w : lz)
        for (int w2 : lx)
          if (w == w2) shared = w;
      std::vector<int> ou, ov;
      for (int w : lz)
        if (w != shared) ou.push_back(w);
      for (int w : lx)
        if (w != shared) ov.push_back(w);
      erase_gens(out, {std::max(loc.g1, loc.g2), std::min(loc.g1, loc.g2)});
      std::map<std::pair<int, int>, int> mid;
      for (std::size_t i = 0; i < ou.size(); ++i)
        for (std::size_t j = 0; j < ov.size(); ++j)
          mid[{static_cast<int>(i), static_cast<int>(j)}] = out.fresh_wire();
      for (std::size_t i = 0; i < ou.size(); ++i) {
        std::vector<int> legs = {ou[i]};
        for (std::size_t j = 0; j < ov.size(); ++j) legs.push_back(mid[{(int)i, (int)j}]);
        out.add_gen(GenKind::XSpider, {}, legs);
      }
      for (std::size_t j = 0; j < ov.size(); ++j) {
        std::vector<int> legs = {ov[j]};
        for (std::size_t i = 0; i < ou.size(); ++i) legs.push_back(mid[{(int)i, (int)j}]);
        out.add_gen(GenKind::ZSpider, {}, legs);
      }
      out.scalar().mul_pow2_halves((1 - static_cast<std::int64_t>(ou.size())) *
                                   (1 - static_cast<std::int64_t>(ov.size())));
      break;
    }
    case BasicRule::BA2: {
      const auto lx = all_legs(gens[loc.g1]), lh = all_legs(gens[loc.g2]);
      int shared = -1;
      for (int w : lx)
        for (int w2 : lh)
          if (w == w2) shared = w;
      const int t = lh[0] == shared ? lh[1] : lh[0];
      std::vector<int> others;
      for (int w : lx)
        if (w != shared) others.push_back(w);
      erase_gens(out, {std::max(loc.g1, loc.g2), std::min(loc.g1, loc.g2)});
      std::vector<int> spider_legs = {t};
      for (int o : others) {
        const int f = out.fresh_wire();
        out.add_gen(GenKind::HBox, {}, {f, o}, HLabel::minus_one());
        spider_legs.push_back(f);
      }
      out.add_gen(GenKind::ZSpider, {}, spider_legs);
      out.scalar().mul_pow2_halves(1 - static_cast<std::int64_t>(others.size()));
      break;
    }
    case BasicRule::A:
    case BasicRule::O: {
      const int nt = loc.g1, ba = loc.g2, bb = loc.aux;
      const auto nlegs = all_legs(gens[nt]);
      int t = -1, tp = -1;
      for (int k = 0; k < static_cast<int>(gens.size()); ++k) {
        if (gens[k].kind != GenKind::ZSpider) continue;
        for (int lw : all_legs(gens[k])) {
          if (lw == nlegs[0]) t = k;
          if (lw == nlegs[1]) tp = k;
        }
      }
      int wa = -1, wb = -1;
      for (int lw : all_legs(gens[t]))
        for (int bw : all_legs(gens[ba]))
          if (lw == bw) wa = lw;
      for (int lw : all_legs(gens[tp]))
        for (int bw : all_legs(gens[bb]))
          if (lw == bw) wb = lw;
      std::vector<int> b_other_wires;
      for (int w : all_legs(gens[bb]))
        if (w != wb) b_other_wires.push_back(w);

      if (r == BasicRule::A) {
        // Both twins close; boxes average into one with factor 2.
        const HLabel merged =
            HLabel::from_complex((gens[ba].label.value() + gens[bb].label.value()) / 2.0);
        std::vector<int> a_legs;
        for (int w : all_legs(gens[ba]))
          if (w != wa) a_legs.push_back(w);
        gens[ba] = {GenKind::HBox, merged, {}, a_legs};
        // Detach b's other legs from their spiders.
        for (int w : b_other_wires)
          for (auto& g : gens)
            if (g.kind == GenKind::ZSpider) drop_leg(g, w);
        erase_gens(out, {nt, t, tp, bb});
        out.scalar().mul_pow2_halves(2);
      } else {
        // t stays; box a divides by box b, box b moves onto the shared
        // spiders alone.
        const HLabel quotient = gens[ba].label.times(gens[bb].label.pow_int(-1));
        gens[ba].label = quotient;
        drop_leg(gens[bb], wb);
        drop_leg(gens[t], nlegs[0]);
        erase_gens(out, {nt, tp});
      }
      break;
    }
    case BasicRule::M:
    case BasicRule::U:
    case BasicRule::I:
      throw Error(rule_name(r) + " rewrites hypergraph-form diagrams");
  }
  out.check_wiring();
  return out;
}

std::vector<BasicLoc> match_basic(const Diagram& d, BasicRule r) {
  std::vector<BasicLoc> out;
  switch (r) {
    case BasicRule::M: {
      std::vector<std::pair<HBoxId, const Diagram::HBox*>> boxes;
      for (const auto& [id, box] : d.hboxes()) boxes.emplace_back(id, &box);
      for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t j = i + 1; j < boxes.size(); ++j)
          if (boxes[i].second->neighbors == boxes[j].second->neighbors)
            out.push_back({boxes[i].first, boxes[j].first, -1});
      break;
    }
    case BasicRule::U:
      for (const auto& [id, box] : d.hboxes())
        if (box.label.is_one()) out.push_back({id, -1, -1});
      break;
    case BasicRule::I:
      for (SpiderId s : d.spiders()) {
        if (d.on_boundary(s)) continue;
        const auto boxes = d.boxes_on(s);
        if (boxes.size() == 1) out.push_back({boxes[0], s, -1});
      }
      break;
    default:
      throw Error(rule_name(r) + " rewrites raw terms");
  }
  return out;
}

Diagram apply_basic(const Diagram& d, BasicRule r, const BasicLoc& loc) {
  Diagram out = d;
  switch (r) {
    case BasicRule::M: {
      const auto a = out.hboxes().at(loc.g1), b = out.hboxes().at(loc.g2);
      if (a.neighbors != b.neighbors) throw Error("M: neighborhoods differ");
      out.remove_hbox(loc.g1);
      out.remove_hbox(loc.g2);
      const HLabel merged = a.label.times(b.label);
      if (!merged.is_one()) out.add_hbox(merged, a.neighbors);
      break;
    }
    case BasicRule::U:
      if (!out.hboxes().at(loc.g1).label.is_one()) throw Error("U: label is not 1");
      out.remove_hbox(loc.g1);
      break;
    case BasicRule::I: {
      const auto box = out.hboxes().at(loc.g1);
      const SpiderId s = loc.g2;
      if (!box.neighbors.count(s)) throw Error("I: spider not on box");
      if (d.on_boundary(s) || d.boxes_on(s).size() != 1) throw Error("I: spider is not a bare leg");
      out.remove_hbox(loc.g1);
      out.remove_spider(s);
      out.scalar().mul_pow2_halves(2);
      const HLabel merged = HLabel::from_complex((1.0 + box.label.value()) / 2.0);
      std::set<SpiderId> rest = box.neighbors;
      rest.erase(s);
      if (rest.empty()) {
        if (!merged.is_one()) {
          if (merged.is_phase())
            out.scalar().mul_phase(merged.phase());
          else
            out.scalar().mul_extra(merged.value());
        }
      } else if (!merged.is_one()) {
        if (auto existing = out.find_box_with_neighbors(rest)) {
          const HLabel fused = out.hboxes().at(*existing).label.times(merged);
          out.remove_hbox(*existing);
          if (!fused.is_one()) out.add_hbox(fused, rest);
        } else {
          out.add_hbox(merged, rest);
        }
      }
      break;
    }
    default:
      throw Error(rule_name(r) + " rewrites raw terms");
  }
  return out;
}

} // namespace zhps
