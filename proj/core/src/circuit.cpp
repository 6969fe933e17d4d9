#include "zhps/circuit.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace zhps {

namespace {

const std::map<std::string, GateKind> kMnemonics = {
    {"h", GateKind::H},     {"x", GateKind::X},     {"z", GateKind::Z},
    {"s", GateKind::S},     {"sdg", GateKind::Sdg}, {"t", GateKind::T},
    {"tdg", GateKind::Tdg}, {"rz", GateKind::RZ},   {"cz", GateKind::CZ},
    {"cnot", GateKind::CNOT}, {"cx", GateKind::CNOT}, {"ccz", GateKind::CCZ},
    {"tof", GateKind::TOF}, {"ccx", GateKind::TOF}, {"swap", GateKind::SWAP}};

std::string mnemonic(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::RZ: return "rz";
    case GateKind::CZ: return "cz";
    case GateKind::CNOT: return "cnot";
    case GateKind::CCZ: return "ccz";
    case GateKind::TOF: return "tof";
    case GateKind::SWAP: return "swap";
  }
  return "?";
}

} // namespace

int Gate::arity() const {
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::RZ:
      return 1;
    case GateKind::CZ:
    case GateKind::CNOT:
    case GateKind::SWAP:
      return 2;
    case GateKind::CCZ:
    case GateKind::TOF:
      return 3;
  }
  return 0;
}

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (!have_header) {
      if (tok != "qubits") throw ParseError(lineno, "expected 'qubits N' header");
      int n = 0;
      if (!(ls >> n) || n <= 0) throw ParseError(lineno, "bad qubit count");
      std::string rest;
      if (ls >> rest) throw ParseError(lineno, "trailing token '" + rest + "'");
      c.width = n;
      have_header = true;
      continue;
    }
    auto it = kMnemonics.find(tok);
    if (it == kMnemonics.end()) throw ParseError(lineno, "unknown mnemonic '" + tok + "'");
    Gate g;
    g.kind = it->second;
    if (g.kind == GateKind::RZ) {
      std::string frac;
      if (!(ls >> frac)) throw ParseError(lineno, "rz needs a phase fraction");
      auto f = Fraction::parse(frac);
      if (!f) throw ParseError(lineno, "malformed fraction '" + frac + "'");
      g.phase = Phase::from_fraction(*f);
    }
    int q;
    while (ls >> q) {
      if (q < 0 || q >= c.width)
        throw ParseError(lineno, "qubit index " + std::to_string(q) + " out of range");
      g.qubits.push_back(q);
    }
    if (!ls.eof()) throw ParseError(lineno, "malformed qubit index");
    if (static_cast<int>(g.qubits.size()) != g.arity())
      throw ParseError(lineno, "'" + tok + "' expects " + std::to_string(g.arity()) +
                                   " qubit(s), got " + std::to_string(g.qubits.size()));
    std::vector<int> sorted = g.qubits;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError(lineno, "duplicate qubit index");
    c.gates.push_back(std::move(g));
  }
  if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'qubits N' header");
  return c;
}

std::string circuit_to_text(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.width << "\n";
  for (const auto& g : c.gates) {
    os << mnemonic(g.kind);
    if (g.kind == GateKind::RZ) os << " " << g.phase.str();
    for (int q : g.qubits) os << " " << q;
    os << "\n";
  }
  return os.str();
}

Circuit adjoint(const Circuit& c) {
  Circuit r;
  r.width = c.width;
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::S: g.kind = GateKind::Sdg; break;
      case GateKind::Sdg: g.kind = GateKind::S; break;
      case GateKind::T: g.kind = GateKind::Tdg; break;
      case GateKind::Tdg: g.kind = GateKind::T; break;
      case GateKind::RZ: g.phase = -g.phase; break;
      default: break; // self-inverse
    }
    r.gates.push_back(std::move(g));
  }
  return r;
}

namespace {

// The gadget occupies the gate's own wires only; embedding into the circuit
// width happens at composition time.
RawDiagram local_gadget(const Gate& g) {
  RawDiagram d;
  const int n = g.arity();
  std::vector<int> in, out;
  for (int i = 0; i < n; ++i) in.push_back(d.fresh_wire());
  for (int i = 0; i < n; ++i) out.push_back(d.fresh_wire());

  auto phase_spider = [&](Phase alpha) {
    const int pw = d.fresh_wire();
    d.add_gen(GenKind::ZSpider, {in[0]}, {out[0], pw});
    d.add_gen(GenKind::HBox, {}, {pw}, HLabel::from_phase(alpha));
  };

  switch (g.kind) {
    case GateKind::H:
      d.add_gen(GenKind::HBox, {in[0]}, {out[0]}, HLabel::minus_one());
      d.scalar().mul_pow2_halves(-1);
      break;
    case GateKind::X:
      d.add_gen(GenKind::Not, {in[0]}, {out[0]});
      break;
    case GateKind::Z: phase_spider(Phase::of(1, 2)); break;
    case GateKind::S: phase_spider(Phase::of(1, 4)); break;
    case GateKind::Sdg: phase_spider(Phase::of(3, 4)); break;
    case GateKind::T: phase_spider(Phase::of(1, 8)); break;
    case GateKind::Tdg: phase_spider(Phase::of(7, 8)); break;
    case GateKind::RZ: phase_spider(g.phase); break;
    case GateKind::CZ: {
      const int b1 = d.fresh_wire(), b2 = d.fresh_wire();
      d.add_gen(GenKind::ZSpider, {in[0]}, {out[0], b1});
      d.add_gen(GenKind::ZSpider, {in[1]}, {out[1], b2});
      d.add_gen(GenKind::HBox, {b1, b2}, {}, HLabel::minus_one());
      break;
    }
    case GateKind::CNOT: {
      // Control spider joined by an unlabeled H-box to the target spider,
      // itself conjugated by Hadamard boxes; scalar 1/2 keeps it unitary.
      const int b1 = d.fresh_wire(), b2 = d.fresh_wire();
      const int t1 = d.fresh_wire(), t2 = d.fresh_wire();
      d.add_gen(GenKind::ZSpider, {in[0]}, {out[0], b1});
      d.add_gen(GenKind::HBox, {b1, b2}, {}, HLabel::minus_one());
      d.add_gen(GenKind::HBox, {in[1]}, {t1}, HLabel::minus_one());
      d.add_gen(GenKind::ZSpider, {t1, b2}, {t2});
      d.add_gen(GenKind::HBox, {t2}, {out[1]}, HLabel::minus_one());
      d.scalar().mul_pow2_halves(-2);
      break;
    }
    case GateKind::CCZ: {
      const int b1 = d.fresh_wire(), b2 = d.fresh_wire(), b3 = d.fresh_wire();
      d.add_gen(GenKind::ZSpider, {in[0]}, {out[0], b1});
      d.add_gen(GenKind::ZSpider, {in[1]}, {out[1], b2});
      d.add_gen(GenKind::ZSpider, {in[2]}, {out[2], b3});
      d.add_gen(GenKind::HBox, {b1, b2, b3}, {}, HLabel::minus_one());
      break;
    }
    case GateKind::TOF: {
      const int b1 = d.fresh_wire(), b2 = d.fresh_wire(), b3 = d.fresh_wire();
      const int t1 = d.fresh_wire(), t2 = d.fresh_wire();
      d.add_gen(GenKind::ZSpider, {in[0]}, {out[0], b1});
      d.add_gen(GenKind::ZSpider, {in[1]}, {out[1], b2});
      d.add_gen(GenKind::HBox, {in[2]}, {t1}, HLabel::minus_one());
      d.add_gen(GenKind::ZSpider, {t1, b3}, {t2});
      d.add_gen(GenKind::HBox, {b1, b2, b3}, {}, HLabel::minus_one());
      d.add_gen(GenKind::HBox, {t2}, {out[2]}, HLabel::minus_one());
      d.scalar().mul_pow2_halves(-2);
      break;
    }
    case GateKind::SWAP: {
      RawDiagram s = RawDiagram::wire_swap();
      return s;
    }
  }
  d.mutable_inputs() = in;
  d.mutable_outputs() = out;
  d.check_wiring();
  return d;
}

} // namespace

RawDiagram gate_to_diagram(const Gate& g, int width) {
  const RawDiagram local = local_gadget(g);
  // Embed: identity wires on untouched qubits, the gadget on g.qubits.
  RawDiagram d = local;
  std::vector<int> in(width, -1), out(width, -1);
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    in[g.qubits[i]] = local.input_wires()[i];
    out[g.qubits[i]] = local.output_wires()[i];
  }
  for (int q = 0; q < width; ++q)
    if (in[q] < 0) {
      const int w = d.fresh_wire();
      in[q] = w;
      out[q] = w;
    }
  d.mutable_inputs() = in;
  d.mutable_outputs() = out;
  d.check_wiring();
  return d;
}

RawDiagram circuit_to_diagram(const Circuit& c) {
  RawDiagram d = RawDiagram::identity(c.width);
  for (const auto& g : c.gates) d = compose_seq(d, gate_to_diagram(g, c.width));
  return d;
}

PurePathSum circuit_to_pathsum(const Circuit& c) {
  PurePathSum e = PurePathSum::identity(c.width);
  std::vector<Var> cur = e.output_sig();
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::Z:
        e.add_phase(Phase::of(1, 2), BoolMonomial({cur[g.qubits[0]]}));
        break;
      case GateKind::S:
        e.add_phase(Phase::of(1, 4), BoolMonomial({cur[g.qubits[0]]}));
        break;
      case GateKind::Sdg:
        e.add_phase(Phase::of(3, 4), BoolMonomial({cur[g.qubits[0]]}));
        break;
      case GateKind::T:
        e.add_phase(Phase::of(1, 8), BoolMonomial({cur[g.qubits[0]]}));
        break;
      case GateKind::Tdg:
        e.add_phase(Phase::of(7, 8), BoolMonomial({cur[g.qubits[0]]}));
        break;
      case GateKind::RZ:
        e.add_phase(g.phase, BoolMonomial({cur[g.qubits[0]]}));
        break;
      case GateKind::CZ:
        e.add_phase(Phase::of(1, 2), BoolMonomial({cur[g.qubits[0]], cur[g.qubits[1]]}));
        break;
      case GateKind::CCZ:
        e.add_phase(Phase::of(1, 2),
                    BoolMonomial({cur[g.qubits[0]], cur[g.qubits[1]], cur[g.qubits[2]]}));
        break;
      case GateKind::H: {
        const Var y = e.fresh_var();
        e.add_phase(Phase::of(1, 2), BoolMonomial({cur[g.qubits[0]], y}));
        e.scalar().mul_pow2_halves(-1);
        cur[g.qubits[0]] = y;
        break;
      }
      case GateKind::X: {
        const Var v = e.fresh_var(), w = e.fresh_var();
        e.add_phase(Phase::of(1, 2), BoolMonomial({v, w}));
        e.add_phase(Phase::of(1, 2), BoolMonomial({v}));
        e.add_phase(Phase::of(1, 2), BoolMonomial({v, cur[g.qubits[0]]}));
        e.scalar().mul_pow2_halves(-2);
        cur[g.qubits[0]] = w;
        break;
      }
      case GateKind::CNOT: {
        const Var y = e.fresh_var(), w = e.fresh_var();
        e.add_phase(Phase::of(1, 2), BoolMonomial({cur[g.qubits[1]], y}));
        e.add_phase(Phase::of(1, 2), BoolMonomial({cur[g.qubits[0]], y}));
        e.add_phase(Phase::of(1, 2), BoolMonomial({y, w}));
        e.scalar().mul_pow2_halves(-2);
        cur[g.qubits[1]] = w;
        break;
      }
      case GateKind::TOF: {
        const Var y = e.fresh_var(), w = e.fresh_var();
        e.add_phase(Phase::of(1, 2), BoolMonomial({cur[g.qubits[2]], y}));
        e.add_phase(Phase::of(1, 2), BoolMonomial({cur[g.qubits[0]], cur[g.qubits[1]], y}));
        e.add_phase(Phase::of(1, 2), BoolMonomial({y, w}));
        e.scalar().mul_pow2_halves(-2);
        cur[g.qubits[2]] = w;
        break;
      }
      case GateKind::SWAP:
        std::swap(cur[g.qubits[0]], cur[g.qubits[1]]);
        break;
    }
  }
  e.set_output_sig(cur);
  return e;
}

} // namespace zhps
