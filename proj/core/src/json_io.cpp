#include "zhps/json_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace zhps {

using nlohmann::json;

namespace {

json phase_to_json_value(const Phase& p) {
  if (p.exact()) return p.frac().str();
  return p.turns();
}

Phase phase_from_json_value(const json& j, const char* what) {
  if (j.is_string()) {
    auto f = Fraction::parse(j.get<std::string>());
    if (!f) throw Error(std::string("bad fraction in ") + what);
    return Phase::from_fraction(*f);
  }
  if (j.is_number()) return Phase::inexact(j.get<double>());
  throw Error(std::string("expected fraction or number in ") + what);
}

json scalar_to_jobj(const ScalarFactor& s) {
  json j;
  j["pow2"] = Fraction(s.half_pow2(), 2).str();
  j["phase"] = phase_to_json_value(s.phase());
  json ex = json::array();
  for (const auto& z : s.extras()) ex.push_back(json::array({z.real(), z.imag()}));
  j["extras"] = ex;
  return j;
}

ScalarFactor scalar_from_jobj(const json& j) {
  ScalarFactor s;
  if (j.contains("pow2")) {
    auto f = Fraction::parse(j.at("pow2").get<std::string>());
    if (!f) throw Error("bad pow2 fraction");
    const Fraction halves = *f * Fraction(2, 1);
    if (!halves.is_integer()) throw Error("pow2 must be a half-integer");
    s.mul_pow2_halves(halves.num);
  }
  if (j.contains("phase")) s.mul_phase(phase_from_json_value(j.at("phase"), "scalar phase"));
  if (j.contains("extras"))
    for (const auto& e : j.at("extras"))
      s.mul_extra({e.at(0).get<double>(), e.at(1).get<double>()});
  return s;
}

json label_to_jobj(const HLabel& l) {
  json j;
  if (l.is_phase())
    j["phase"] = phase_to_json_value(l.phase());
  else {
    j["re"] = l.value().real();
    j["im"] = l.value().imag();
  }
  return j;
}

HLabel label_from_jobj(const json& j) {
  if (j.contains("phase")) return HLabel::from_phase(phase_from_json_value(j.at("phase"), "label"));
  if (j.contains("re")) return HLabel::general({j.at("re").get<double>(), j.value("im", 0.0)});
  throw Error("H-box label needs 'phase' or 're'/'im'");
}

} // namespace

std::string scalar_to_json(const ScalarFactor& s) { return scalar_to_jobj(s).dump(); }

ScalarFactor scalar_from_json_text(const std::string& text) {
  return scalar_from_jobj(json::parse(text));
}

std::string diagram_to_json(const Diagram& d) {
  json j;
  j["spiders"] = json::array();
  for (SpiderId s : d.spiders()) j["spiders"].push_back(s);
  j["hboxes"] = json::array();
  for (const auto& [id, box] : d.hboxes()) {
    json b;
    b["id"] = id;
    b["label"] = label_to_jobj(box.label);
    b["neighbors"] = json::array();
    for (SpiderId s : box.neighbors) b["neighbors"].push_back(s);
    j["hboxes"].push_back(b);
  }
  j["inputs"] = d.inputs();
  j["outputs"] = d.outputs();
  j["scalar"] = scalar_to_jobj(d.scalar());
  return j.dump(2);
}

Diagram diagram_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  Diagram d;
  for (const auto& s : j.at("spiders")) d.add_spider_with_id(s.get<int>());
  for (const auto& b : j.at("hboxes")) {
    std::set<SpiderId> nbrs;
    for (const auto& n : b.at("neighbors")) {
      const SpiderId s = n.get<int>();
      if (nbrs.count(s)) throw Error("H-box neighbor list has a duplicate (parallel edge)");
      nbrs.insert(s);
    }
    d.add_hbox(label_from_jobj(b.at("label")), nbrs);
  }
  d.set_inputs(j.at("inputs").get<std::vector<int>>());
  d.set_outputs(j.at("outputs").get<std::vector<int>>());
  if (j.contains("scalar")) d.set_scalar(scalar_from_jobj(j.at("scalar")));
  if (auto why = d.validate()) throw Error("diagram is not hypergraph-like: " + *why);
  return d;
}

std::string pathsum_to_json(const PurePathSum& e) {
  // Compact the (possibly gappy) variable ids to 1..k.
  std::map<Var, int> compact;
  for (Var v : e.vars()) compact[v] = static_cast<int>(compact.size()) + 1;
  json j;
  j["vars"] = compact.size();
  json in = json::array(), out = json::array();
  for (Var v : e.input_sig()) in.push_back(compact.at(v));
  for (Var v : e.output_sig()) out.push_back(compact.at(v));
  j["inputs"] = in;
  j["outputs"] = out;
  json terms = json::array();
  for (const auto& [m, c] : e.phi().terms()) {
    json t;
    t["coeff"] = phase_to_json_value(c);
    json mono = json::array();
    for (Var v : m.vars()) mono.push_back(compact.at(v));
    t["monomial"] = mono;
    terms.push_back(t);
  }
  j["terms"] = terms;
  j["scalar"] = scalar_to_jobj(e.scalar());
  return j.dump(2);
}

PurePathSum pathsum_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  PurePathSum e;
  const int k = j.at("vars").get<int>();
  if (k < 0) throw Error("vars must be nonnegative");
  for (int v = 1; v <= k; ++v) e.add_var(v);
  if (j.contains("scalar")) e.set_scalar(scalar_from_jobj(j.at("scalar")));
  for (const auto& t : j.at("terms")) {
    std::vector<Var> vars;
    for (const auto& v : t.at("monomial")) vars.push_back(v.get<int>());
    for (Var v : vars)
      if (v < 1 || v > k) throw Error("term references variable out of range");
    e.add_phase(phase_from_json_value(t.at("coeff"), "term coefficient"), BoolMonomial(vars));
  }
  auto sig = [&](const char* key) {
    std::vector<Var> s;
    for (const auto& v : j.at(key)) {
      const Var x = v.get<int>();
      if (x < 1 || x > k) throw Error(std::string(key) + " references variable out of range");
      s.push_back(x);
    }
    return s;
  };
  e.set_input_sig(sig("inputs"));
  e.set_output_sig(sig("outputs"));
  return e;
}

std::string trace_to_json(const RewriteTrace& t) {
  json j = json::array();
  for (const auto& s : t.steps) {
    json step;
    step["rule"] = s.rule;
    step["vars_removed"] = s.removed;
    json delta;
    delta["pow2"] = std::to_string(s.scalar_delta.half_pow2());
    delta["phase"] = phase_to_json_value(s.scalar_delta.phase());
    if (!s.scalar_delta.extras().empty()) {
      json ex = json::array();
      for (const auto& z : s.scalar_delta.extras()) ex.push_back(json::array({z.real(), z.imag()}));
      delta["extras"] = ex;
    }
    step["scalar_delta"] = delta;
    step["count_before"] = s.count_before;
    step["count_after"] = s.count_after;
    j.push_back(step);
  }
  return j.dump(2);
}

std::string diagram_to_dot(const Diagram& d) {
  std::ostringstream os;
  os << "graph zh {\n  rankdir=LR;\n";
  for (SpiderId s : d.spiders())
    os << "  s" << s << " [shape=circle,label=\"" << s << "\",style=filled,fillcolor=white];\n";
  for (const auto& [id, box] : d.hboxes()) {
    std::string label = box.label.is_unlabeled() ? "" : box.label.str();
    os << "  h" << id << " [shape=box,label=\"" << label << "\"];\n";
    for (SpiderId s : box.neighbors) os << "  h" << id << " -- s" << s << ";\n";
  }
  for (std::size_t i = 0; i < d.inputs().size(); ++i) {
    os << "  in" << i << " [shape=plaintext,label=\"in" << i << "\"];\n";
    os << "  in" << i << " -- s" << d.inputs()[i] << " [style=dashed];\n";
  }
  for (std::size_t i = 0; i < d.outputs().size(); ++i) {
    os << "  out" << i << " [shape=plaintext,label=\"out" << i << "\"];\n";
    os << "  out" << i << " -- s" << d.outputs()[i] << " [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

std::string matrix_to_text(const DenseMatrix& m) { return m.str(); }

std::string matrix_to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols; ++c)
      row.push_back(json::array({m.at(r, c).real(), m.at(r, c).imag()}));
    rows.push_back(row);
  }
  return rows.dump();
}

} // namespace zhps
