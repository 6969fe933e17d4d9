#include "zhps/pathsum.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace zhps {

PurePathSum PurePathSum::identity(int n) {
  PurePathSum e;
  std::vector<Var> sig;
  for (int i = 1; i <= n; ++i) {
    e.add_var(i);
    sig.push_back(i);
  }
  e.set_input_sig(sig);
  e.set_output_sig(sig);
  return e;
}

Var PurePathSum::fresh_var() {
  const Var v = next_var_++;
  vars_.insert(v);
  return v;
}

void PurePathSum::add_var(Var v) {
  vars_.insert(v);
  next_var_ = std::max(next_var_, v + 1);
}

void PurePathSum::remove_var(Var v) {
  if (phi_.contains_var(v)) throw Error("remove_var: variable still used by phi");
  if (in_signatures(v)) throw Error("remove_var: variable still in a signature");
  vars_.erase(v);
}

void PurePathSum::set_input_sig(std::vector<Var> sig) {
  for (Var v : sig)
    if (!vars_.count(v)) throw Error("input signature references unknown variable");
  input_sig_ = std::move(sig);
}

void PurePathSum::set_output_sig(std::vector<Var> sig) {
  for (Var v : sig)
    if (!vars_.count(v)) throw Error("output signature references unknown variable");
  output_sig_ = std::move(sig);
}

void PurePathSum::retarget_signatures(Var from, Var to) {
  for (auto& v : input_sig_)
    if (v == from) v = to;
  for (auto& v : output_sig_)
    if (v == from) v = to;
}

bool PurePathSum::in_signatures(Var v) const {
  return std::find(input_sig_.begin(), input_sig_.end(), v) != input_sig_.end() ||
         std::find(output_sig_.begin(), output_sig_.end(), v) != output_sig_.end();
}

void PurePathSum::add_phase(const Phase& coeff, const BoolMonomial& m) {
  if (m.is_constant()) {
    scalar_.mul_phase(coeff);
    return;
  }
  for (Var v : m.vars())
    if (!vars_.count(v)) throw Error("phase term references unknown variable");
  phi_.add_term(m, coeff);
}

void PurePathSum::add_phase_poly(PhasePoly p) {
  const Phase c = p.take_constant();
  scalar_.mul_phase(c);
  for (const auto& [m, coeff] : p.terms()) add_phase(coeff, m);
}

void PurePathSum::set_phi(PhasePoly p) {
  phi_ = PhasePoly();
  add_phase_poly(std::move(p));
}

void PurePathSum::drop_terms_with(Var v) {
  PhasePoly kept;
  for (const auto& [m, c] : phi_.terms())
    if (!m.contains(v)) kept.add_term(m, c);
  phi_ = kept;
}

PurePathSum PurePathSum::adjoint() const {
  PurePathSum r = *this;
  PhasePoly neg;
  for (const auto& [m, c] : phi_.terms()) neg.add_term(m, -c);
  r.phi_ = neg;
  r.input_sig_ = output_sig_;
  r.output_sig_ = input_sig_;
  ScalarFactor s = ScalarFactor::pow2_halves(scalar_.half_pow2());
  s.mul_phase(-scalar_.phase());
  for (auto z : scalar_.extras()) s.mul_extra(std::conj(z));
  r.scalar_ = s;
  return r;
}

bool PurePathSum::is_identity(bool up_to_phase) const {
  if (input_sig_ != output_sig_) return false;
  if (!phi_.empty()) return false;
  std::set<Var> sig_vars(input_sig_.begin(), input_sig_.end());
  if (sig_vars.size() != vars_.size()) return false;
  if (sig_vars != vars_) return false;
  // Repeated signature entries are not the plain identity map.
  if (sig_vars.size() != input_sig_.size()) return false;
  return up_to_phase ? scalar_.is_unit_modulus() : scalar_.is_one();
}

bool PurePathSum::operator==(const PurePathSum& o) const {
  return vars_ == o.vars_ && input_sig_ == o.input_sig_ && output_sig_ == o.output_sig_ &&
         phi_ == o.phi_ && scalar_ == o.scalar_;
}

std::string PurePathSum::str() const {
  std::string s = "sum over {";
  for (auto it = vars_.begin(); it != vars_.end(); ++it) {
    if (it != vars_.begin()) s += ",";
    s += "x" + std::to_string(*it);
  }
  s += "} phi = " + phi_.str();
  s += "; in = [";
  for (std::size_t i = 0; i < input_sig_.size(); ++i)
    s += (i ? "," : "") + std::to_string(input_sig_[i]);
  s += "]; out = [";
  for (std::size_t i = 0; i < output_sig_.size(); ++i)
    s += (i ? "," : "") + std::to_string(output_sig_[i]);
  s += "]";
  return s;
}

PurePathSum purify(const std::vector<BoolPoly>& f, const PhasePoly& phi,
                   const ScalarFactor& lambda, int n_inputs, int n_paths) {
  PurePathSum e;
  std::vector<Var> xs;
  for (int i = 1; i <= n_inputs; ++i) {
    e.add_var(i);
    xs.push_back(i);
  }
  for (int j = 1; j <= n_paths; ++j) e.add_var(n_inputs + j);
  e.set_input_sig(xs);
  e.set_scalar(lambda);
  e.add_phase_poly(phi);

  std::vector<Var> ws;
  for (const auto& fj : f) {
    const Var v = e.fresh_var();
    const Var w = e.fresh_var();
    ws.push_back(w);
    e.add_phase(Phase::half(), BoolMonomial({v, w}));
    // (1/2) v * f_j, canonicalized; multiply each monomial by v afterwards
    // (v is fresh, so the product stays multilinear).
    const PhasePoly part = canonicalize(Phase::half(), fj);
    for (const auto& [m, c] : part.terms()) e.add_phase(c, m.with(v));
  }
  e.set_output_sig(ws);
  e.scalar().mul_pow2_halves(-2 * static_cast<std::int64_t>(f.size()));
  return e;
}

PurePathSum compose_pathsums(const PurePathSum& a, const PurePathSum& b) {
  if (a.output_sig().size() != b.input_sig().size())
    throw Error("compose_pathsums: arity mismatch (" + std::to_string(a.output_sig().size()) +
                " outputs vs " + std::to_string(b.input_sig().size()) + " inputs)");

  // Rename b's variables above a's.
  Var base = 0;
  for (Var v : a.vars()) base = std::max(base, v);
  std::map<Var, Var> bmap;
  for (Var v : b.vars()) bmap[v] = v + base;

  // Union-find over the combined variable set; joined wire pairs are merged.
  std::map<Var, Var> parent;
  std::function<Var(Var)> find = [&](Var v) -> Var {
    auto it = parent.find(v);
    if (it == parent.end() || it->second == v) return v;
    const Var root = find(it->second);
    parent[v] = root;
    return root;
  };
  auto unite = [&](Var x, Var y) {
    const Var rx = find(x), ry = find(y);
    if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
  };
  for (std::size_t i = 0; i < a.output_sig().size(); ++i)
    unite(a.output_sig()[i], bmap.at(b.input_sig()[i]));

  PurePathSum r;
  for (Var v : a.vars()) r.add_var(find(v));
  for (Var v : b.vars()) r.add_var(find(bmap.at(v)));

  std::vector<Var> in_sig, out_sig;
  for (Var v : a.input_sig()) in_sig.push_back(find(v));
  for (Var v : b.output_sig()) out_sig.push_back(find(bmap.at(v)));
  r.set_input_sig(in_sig);
  r.set_output_sig(out_sig);

  r.set_scalar(a.scalar() * b.scalar());
  for (const auto& [m, c] : a.phi().terms()) {
    std::vector<Var> vars;
    for (Var v : m.vars()) vars.push_back(find(v));
    r.add_phase(c, BoolMonomial(vars));
  }
  for (const auto& [m, c] : b.phi().terms()) {
    std::vector<Var> vars;
    for (Var v : m.vars()) vars.push_back(find(bmap.at(v)));
    r.add_phase(c, BoolMonomial(vars));
  }
  return r;
}

Phase evaluate_assignment(const PhasePoly& phi, const std::vector<Var>& order,
                          const std::vector<bool>& bits) {
  if (order.size() != bits.size()) throw Error("evaluate_assignment: size mismatch");
  std::map<Var, bool> m;
  for (std::size_t i = 0; i < order.size(); ++i) m[order[i]] = bits[i];
  return phi.eval([&](Var v) {
    auto it = m.find(v);
    if (it == m.end()) throw Error("evaluate_assignment: unassigned variable");
    return it->second;
  });
}

} // namespace zhps
