#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zhps/diagram.hpp"
#include "zhps/pathsum.hpp"

namespace zhps {

struct ParseError : Error {
  int line;
  ParseError(int ln, const std::string& what)
      : Error("line " + std::to_string(ln) + ": " + what), line(ln) {}
};

enum class GateKind { H, X, Z, S, Sdg, T, Tdg, RZ, CZ, CNOT, CCZ, TOF, SWAP };

struct Gate {
  GateKind kind{GateKind::H};
  std::vector<int> qubits;
  Phase phase{}; // RZ only

  int arity() const;
};

struct Circuit {
  int width{0};
  std::vector<Gate> gates;
};

/// Gate-list format: header "qubits N", then one gate per line (lowercase
/// mnemonic and whitespace-separated qubit indices; "rz p/q t" applies the
/// phase 2 pi p/q). '#' starts a comment; blank lines are ignored.
Circuit parse_circuit(std::string_view text);
std::string circuit_to_text(const Circuit& c);

/// Reversed gate list with every gate inverted.
Circuit adjoint(const Circuit& c);

/// Generator-level gadget for one gate, exactly unitary (normalization
/// scalars included).
RawDiagram gate_to_diagram(const Gate& g, int width);
RawDiagram circuit_to_diagram(const Circuit& c);

/// Direct compilation to a pure path-sum using the minimal per-gate forms
/// (diagonal gates add phase terms; H introduces one variable; X two).
PurePathSum circuit_to_pathsum(const Circuit& c);

} // namespace zhps
