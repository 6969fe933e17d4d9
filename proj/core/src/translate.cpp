#include "zhps/translate.hpp"

#include <cmath>

namespace zhps {

PurePathSum zh_to_pathsum(const Diagram& d, bool allow_inexact) {
  if (auto why = d.validate()) throw Error("zh_to_pathsum: not hypergraph-like: " + *why);
  PurePathSum e;
  for (SpiderId s : d.spiders()) e.add_var(s);
  std::vector<Var> in(d.inputs().begin(), d.inputs().end());
  std::vector<Var> out(d.outputs().begin(), d.outputs().end());
  e.set_input_sig(in);
  e.set_output_sig(out);
  e.set_scalar(d.scalar());

  for (const auto& [id, box] : d.hboxes()) {
    Phase coeff;
    if (box.label.is_phase()) {
      coeff = box.label.phase();
    } else {
      const HLabel converted = HLabel::from_complex(box.label.value());
      if (converted.is_phase()) {
        coeff = converted.phase();
      } else if (allow_inexact && std::abs(std::abs(box.label.value()) - 1.0) < 1e-12) {
        coeff = Phase::inexact(std::arg(box.label.value()) / (2.0 * M_PI));
      } else {
        throw Error("zh_to_pathsum: H-box " + std::to_string(id) +
                    " has a non-phase label " + box.label.str());
      }
    }
    if (coeff.exact() && coeff.is_zero())
      throw Error("zh_to_pathsum: H-box " + std::to_string(id) + " carries the trivial label 1");
    std::vector<Var> vars(box.neighbors.begin(), box.neighbors.end());
    e.add_phase(coeff, BoolMonomial(vars));
  }
  return e;
}

Diagram pathsum_to_zh(const PurePathSum& e) {
  Diagram d;
  for (Var v : e.vars()) d.add_spider_with_id(v);
  for (const auto& [m, c] : e.phi().terms()) {
    std::set<SpiderId> nbrs(m.vars().begin(), m.vars().end());
    d.add_hbox(HLabel::from_phase(c), nbrs);
  }
  d.set_inputs(std::vector<SpiderId>(e.input_sig().begin(), e.input_sig().end()));
  d.set_outputs(std::vector<SpiderId>(e.output_sig().begin(), e.output_sig().end()));
  d.set_scalar(e.scalar());
  return d;
}

} // namespace zhps
