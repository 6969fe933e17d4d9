#include "zhps/diagram.hpp"

#include <algorithm>
#include <cmath>

namespace zhps {

bool HLabel::is_one() const {
  if (is_phase_) return phase_.exact() && phase_.is_zero();
  return value_ == std::complex<double>(1.0, 0.0);
}

HLabel HLabel::from_complex(std::complex<double> a) {
  if (std::abs(std::abs(a) - 1.0) < 1e-12) {
    const double turns = std::arg(a) / (2.0 * M_PI);
    for (std::int64_t den = 1; den <= 64; ++den) {
      const double scaled = turns * static_cast<double>(den);
      const double r = std::round(scaled);
      if (std::abs(scaled - r) < 1e-9) {
        const Phase p = Phase::of(static_cast<std::int64_t>(r), den);
        if (std::abs(p.to_complex() - a) < 1e-9) return from_phase(p);
      }
    }
  }
  return general(a);
}

HLabel HLabel::times(const HLabel& o) const {
  if (is_phase_ && o.is_phase_) return from_phase(phase_ + o.phase_);
  return from_complex(value() * o.value());
}

HLabel HLabel::pow_int(std::int64_t k) const {
  if (is_phase_) return from_phase(phase_.times_int(k));
  const std::complex<double> a = value_;
  if (k < 0 && a == std::complex<double>(0.0, 0.0))
    throw Error("negative power of a zero H-box label");
  std::complex<double> r{1.0, 0.0};
  const std::complex<double> base = k < 0 ? 1.0 / a : a;
  for (std::int64_t i = 0, n = k < 0 ? -k : k; i < n; ++i) r *= base;
  return general(r);
}

bool HLabel::operator==(const HLabel& o) const {
  if (is_phase_ != o.is_phase_) return false;
  if (is_phase_) return phase_ == o.phase_;
  return value_ == o.value_;
}

std::string HLabel::str() const {
  if (is_phase_) return "e2pi(" + phase_.str() + ")";
  return "(" + std::to_string(value_.real()) + "," + std::to_string(value_.imag()) + ")";
}

RawDiagram RawDiagram::identity(int n) {
  RawDiagram d;
  for (int i = 0; i < n; ++i) {
    const int w = d.fresh_wire();
    d.input_wires_.push_back(w);
    d.output_wires_.push_back(w);
  }
  return d;
}

RawDiagram RawDiagram::wire_swap() {
  RawDiagram d;
  const int a = d.fresh_wire(), b = d.fresh_wire();
  d.input_wires_ = {a, b};
  d.output_wires_ = {b, a};
  return d;
}

int RawDiagram::add_gen(GenKind kind, std::vector<int> in, std::vector<int> out, HLabel label) {
  Gen g;
  g.kind = kind;
  g.label = label;
  g.in_wires = std::move(in);
  g.out_wires = std::move(out);
  gens_.push_back(std::move(g));
  return static_cast<int>(gens_.size()) - 1;
}

std::size_t RawDiagram::wire_count() const {
  std::set<int> ws;
  for (const auto& g : gens_) {
    ws.insert(g.in_wires.begin(), g.in_wires.end());
    ws.insert(g.out_wires.begin(), g.out_wires.end());
  }
  ws.insert(input_wires_.begin(), input_wires_.end());
  ws.insert(output_wires_.begin(), output_wires_.end());
  return ws.size();
}

void RawDiagram::check_wiring() const {
  std::map<int, int> count;
  for (const auto& g : gens_) {
    for (int w : g.in_wires) count[w]++;
    for (int w : g.out_wires) count[w]++;
  }
  for (int w : input_wires_) count[w]++;
  for (int w : output_wires_) count[w]++;
  for (const auto& [w, c] : count)
    if (c != 2)
      throw Error("wire " + std::to_string(w) + " has " + std::to_string(c) +
                  " endpoints (expected 2)");
}

namespace {

void remap_wires(RawDiagram::Gen& g, const std::map<int, int>& m) {
  for (auto& w : g.in_wires) {
    auto it = m.find(w);
    if (it != m.end()) w = it->second;
  }
  for (auto& w : g.out_wires) {
    auto it = m.find(w);
    if (it != m.end()) w = it->second;
  }
}

} // namespace

RawDiagram compose_seq(const RawDiagram& d1, const RawDiagram& d2) {
  if (d1.arity_out() != d2.arity_in())
    throw Error("compose_seq: arity mismatch (" + std::to_string(d1.arity_out()) + " vs " +
                std::to_string(d2.arity_in()) + ")");
  RawDiagram r = d1;
  // Bring d2's wires into a disjoint range.
  const int base = r.next_wire_;
  std::map<int, int> shift;
  RawDiagram d2c = d2;
  {
    std::set<int> ws;
    for (const auto& g : d2c.gens_) {
      ws.insert(g.in_wires.begin(), g.in_wires.end());
      ws.insert(g.out_wires.begin(), g.out_wires.end());
    }
    ws.insert(d2c.input_wires_.begin(), d2c.input_wires_.end());
    ws.insert(d2c.output_wires_.begin(), d2c.output_wires_.end());
    for (int w : ws) shift[w] = base + static_cast<int>(shift.size());
  }
  for (auto& g : d2c.gens_) remap_wires(g, shift);
  for (auto& w : d2c.input_wires_) w = shift.at(w);
  for (auto& w : d2c.output_wires_) w = shift.at(w);
  r.next_wire_ = base + static_cast<int>(shift.size());

  // Union-find on wire ids so repeated joins chain correctly.
  std::map<int, int> parent;
  std::function<int(int)> find = [&](int w) -> int {
    auto it = parent.find(w);
    if (it == parent.end() || it->second == w) return w;
    const int root = find(it->second);
    parent[w] = root;
    return root;
  };
  for (std::size_t i = 0; i < r.output_wires_.size(); ++i) {
    const int a = find(r.output_wires_[i]);
    const int b = find(d2c.input_wires_[i]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  auto apply = [&](std::vector<int>& ws) {
    for (auto& w : ws) w = find(w);
  };
  for (auto& g : r.gens_) {
    apply(g.in_wires);
    apply(g.out_wires);
  }
  apply(r.input_wires_);
  apply(r.output_wires_);
  for (auto& g : d2c.gens_) {
    apply(g.in_wires);
    apply(g.out_wires);
  }
  apply(d2c.output_wires_);

  r.gens_.insert(r.gens_.end(), d2c.gens_.begin(), d2c.gens_.end());
  const std::vector<int> joined = r.output_wires_;
  r.output_wires_ = d2c.output_wires_;
  r.scalar_ *= d2.scalar_;

  // A joined wire with no remaining endpoint is a closed loop: factor 2.
  std::map<int, int> count;
  for (const auto& g : r.gens_) {
    for (int w : g.in_wires) count[w]++;
    for (int w : g.out_wires) count[w]++;
  }
  for (int w : r.input_wires_) count[w]++;
  for (int w : r.output_wires_) count[w]++;
  std::set<int> loops;
  for (int w : joined)
    if (count.find(find(w)) == count.end()) loops.insert(find(w));
  for (std::size_t i = 0; i < loops.size(); ++i) r.scalar_.mul_pow2_halves(2);
  r.check_wiring();
  return r;
}

RawDiagram compose_par(const RawDiagram& d1, const RawDiagram& d2) {
  RawDiagram r = d1;
  const int base = r.next_wire_;
  std::map<int, int> shift;
  RawDiagram d2c = d2;
  {
    std::set<int> ws;
    for (const auto& g : d2c.gens_) {
      ws.insert(g.in_wires.begin(), g.in_wires.end());
      ws.insert(g.out_wires.begin(), g.out_wires.end());
    }
    ws.insert(d2c.input_wires_.begin(), d2c.input_wires_.end());
    ws.insert(d2c.output_wires_.begin(), d2c.output_wires_.end());
    for (int w : ws) shift[w] = base + static_cast<int>(shift.size());
  }
  for (auto& g : d2c.gens_) remap_wires(g, shift);
  for (auto& w : d2c.input_wires_) w = shift.at(w);
  for (auto& w : d2c.output_wires_) w = shift.at(w);
  r.next_wire_ = base + static_cast<int>(shift.size());

  r.gens_.insert(r.gens_.end(), d2c.gens_.begin(), d2c.gens_.end());
  r.input_wires_.insert(r.input_wires_.end(), d2c.input_wires_.begin(), d2c.input_wires_.end());
  r.output_wires_.insert(r.output_wires_.end(), d2c.output_wires_.begin(), d2c.output_wires_.end());
  r.scalar_ *= d2.scalar_;
  return r;
}

SpiderId Diagram::add_spider() { return add_spider_with_id(next_spider_); }

SpiderId Diagram::add_spider_with_id(SpiderId id) {
  spiders_.insert(id);
  next_spider_ = std::max(next_spider_, id + 1);
  return id;
}

void Diagram::add_phase_term(const Phase& coeff, const std::set<SpiderId>& neighbors) {
  if (coeff.exact() && coeff.is_zero()) return;
  if (neighbors.empty()) {
    scalar_.mul_phase(coeff);
    return;
  }
  if (auto existing = find_box_with_neighbors(neighbors)) {
    HBox& box = hboxes_.at(*existing);
    box.label = box.label.times(HLabel::from_phase(coeff));
    if (box.label.is_one()) hboxes_.erase(*existing);
    return;
  }
  add_hbox(HLabel::from_phase(coeff), neighbors);
}

HBoxId Diagram::add_hbox(const HLabel& label, const std::set<SpiderId>& neighbors) {
  for (SpiderId s : neighbors)
    if (!spiders_.count(s)) throw Error("H-box references unknown spider");
  const HBoxId id = next_hbox_++;
  hboxes_[id] = HBox{label, neighbors};
  return id;
}

void Diagram::remove_hbox(HBoxId id) { hboxes_.erase(id); }

void Diagram::remove_spider(SpiderId id) {
  for (const auto& [hid, box] : hboxes_)
    if (box.neighbors.count(id)) throw Error("removing spider still used by an H-box");
  if (on_boundary(id)) throw Error("removing boundary spider");
  spiders_.erase(id);
}

void Diagram::set_inputs(std::vector<SpiderId> in) {
  for (SpiderId s : in)
    if (!spiders_.count(s)) throw Error("input references unknown spider");
  inputs_ = std::move(in);
}

void Diagram::set_outputs(std::vector<SpiderId> out) {
  for (SpiderId s : out)
    if (!spiders_.count(s)) throw Error("output references unknown spider");
  outputs_ = std::move(out);
}

bool Diagram::on_boundary(SpiderId s) const {
  return std::find(inputs_.begin(), inputs_.end(), s) != inputs_.end() ||
         std::find(outputs_.begin(), outputs_.end(), s) != outputs_.end();
}

std::vector<HBoxId> Diagram::boxes_on(SpiderId s) const {
  std::vector<HBoxId> out;
  for (const auto& [id, box] : hboxes_)
    if (box.neighbors.count(s)) out.push_back(id);
  return out;
}

std::optional<HBoxId> Diagram::find_box_with_neighbors(const std::set<SpiderId>& nbrs) const {
  for (const auto& [id, box] : hboxes_)
    if (box.neighbors == nbrs) return id;
  return std::nullopt;
}

std::optional<std::string> Diagram::validate() const {
  for (const auto& [id, box] : hboxes_) {
    if (box.neighbors.empty())
      return "H-box " + std::to_string(id) + " has an empty neighborhood";
    for (SpiderId s : box.neighbors)
      if (!spiders_.count(s))
        return "H-box " + std::to_string(id) + " references missing spider " + std::to_string(s);
  }
  for (SpiderId s : inputs_)
    if (!spiders_.count(s)) return "input list references missing spider " + std::to_string(s);
  for (SpiderId s : outputs_)
    if (!spiders_.count(s)) return "output list references missing spider " + std::to_string(s);
  for (auto it = hboxes_.begin(); it != hboxes_.end(); ++it) {
    auto jt = it;
    for (++jt; jt != hboxes_.end(); ++jt)
      if (it->second.neighbors == jt->second.neighbors)
        return "H-boxes " + std::to_string(it->first) + " and " + std::to_string(jt->first) +
               " share a neighborhood";
  }
  return std::nullopt;
}

bool Diagram::is_identity(bool up_to_phase) const {
  if (!hboxes_.empty()) return false;
  if (inputs_ != outputs_) return false;
  std::set<SpiderId> sig(inputs_.begin(), inputs_.end());
  if (sig.size() != inputs_.size()) return false;
  if (sig != spiders_) return false;
  return up_to_phase ? scalar_.is_unit_modulus() : scalar_.is_one();
}

RawDiagram Diagram::to_raw() const {
  RawDiagram raw;
  raw.scalar() = scalar_;
  // One wire per (box, spider) incidence and per boundary occurrence.
  std::map<SpiderId, std::vector<int>> spider_wires;
  std::map<HBoxId, std::vector<int>> box_wires;
  for (const auto& [id, box] : hboxes_)
    for (SpiderId s : box.neighbors) {
      const int w = raw.fresh_wire();
      spider_wires[s].push_back(w);
      box_wires[id].push_back(w);
    }
  std::vector<int> in, out;
  for (SpiderId s : inputs_) {
    const int w = raw.fresh_wire();
    spider_wires[s].push_back(w);
    in.push_back(w);
  }
  for (SpiderId s : outputs_) {
    const int w = raw.fresh_wire();
    spider_wires[s].push_back(w);
    out.push_back(w);
  }
  for (SpiderId s : spiders_) raw.add_gen(GenKind::ZSpider, {}, spider_wires[s]);
  for (const auto& [id, box] : hboxes_) raw.add_gen(GenKind::HBox, {}, box_wires[id], box.label);
  raw.mutable_inputs() = in;
  raw.mutable_outputs() = out;
  raw.check_wiring();
  return raw;
}

Diagram Diagram::adjoint() const {
  Diagram r = *this;
  for (auto& [id, box] : r.hboxes_) {
    if (box.label.is_phase())
      box.label = HLabel::from_phase(-box.label.phase());
    else
      box.label = HLabel::general(std::conj(box.label.value()));
  }
  std::swap(r.inputs_, r.outputs_);
  ScalarFactor s = ScalarFactor::pow2_halves(scalar_.half_pow2());
  s.mul_phase(-scalar_.phase());
  for (auto z : scalar_.extras()) s.mul_extra(std::conj(z));
  r.scalar_ = s;
  return r;
}

std::string Diagram::str() const {
  std::string s = "spiders {";
  for (auto it = spiders_.begin(); it != spiders_.end(); ++it)
    s += (it == spiders_.begin() ? "" : ",") + std::to_string(*it);
  s += "} boxes {";
  for (const auto& [id, box] : hboxes_) {
    s += " " + std::to_string(id) + ":" + box.label.str() + "@(";
    for (auto it = box.neighbors.begin(); it != box.neighbors.end(); ++it)
      s += (it == box.neighbors.begin() ? "" : ",") + std::to_string(*it);
    s += ")";
  }
  s += " }";
  return s;
}

void reduce_parallel(MultiEdge& edge, SpiderId spider) {
  bool seen = false;
  auto& ns = edge.neighbors;
  ns.erase(std::remove_if(ns.begin(), ns.end(),
                          [&](SpiderId s) {
                            if (s != spider) return false;
                            if (seen) return true;
                            seen = true;
                            return false;
                          }),
           ns.end());
}

} // namespace zhps
