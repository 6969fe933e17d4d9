#pragma once

#include <complex>
#include <vector>

#include "zhps/circuit.hpp"
#include "zhps/oracle.hpp"

// Test-side helpers, independent of the library's evaluation paths wherever
// they are used as oracles.
namespace testutil {

using zhps::DenseMatrix;
using cplx = std::complex<double>;

inline DenseMatrix matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries) {
  DenseMatrix m(rows, cols);
  m.data = std::move(entries);
  return m;
}

inline DenseMatrix identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix m(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t ar = 0; ar < a.rows; ++ar)
    for (std::size_t ac = 0; ac < a.cols; ++ac)
      for (std::size_t br = 0; br < b.rows; ++br)
        for (std::size_t bc = 0; bc < b.cols; ++bc)
          m.at(ar * b.rows + br, ac * b.cols + bc) = a.at(ar, ac) * b.at(br, bc);
  return m;
}

// Textbook single-gate unitary on the gate's own qubits.
inline DenseMatrix gate_unitary(const zhps::Gate& g) {
  const double s = 1.0 / std::sqrt(2.0);
  const cplx i{0.0, 1.0};
  using K = zhps::GateKind;
  switch (g.kind) {
    case K::H: return matrix(2, 2, {s, s, s, -s});
    case K::X: return matrix(2, 2, {0, 1, 1, 0});
    case K::Z: return matrix(2, 2, {1, 0, 0, -1});
    case K::S: return matrix(2, 2, {1, 0, 0, i});
    case K::Sdg: return matrix(2, 2, {1, 0, 0, -i});
    case K::T: return matrix(2, 2, {1, 0, 0, std::polar(1.0, M_PI / 4)});
    case K::Tdg: return matrix(2, 2, {1, 0, 0, std::polar(1.0, -M_PI / 4)});
    case K::RZ: return matrix(2, 2, {1, 0, 0, g.phase.to_complex()});
    case K::CZ: {
      DenseMatrix m = identity(4);
      m.at(3, 3) = -1.0;
      return m;
    }
    case K::CNOT: {
      DenseMatrix m(4, 4);
      m.at(0, 0) = m.at(1, 1) = m.at(2, 3) = m.at(3, 2) = 1.0;
      return m;
    }
    case K::CCZ: {
      DenseMatrix m = identity(8);
      m.at(7, 7) = -1.0;
      return m;
    }
    case K::TOF: {
      DenseMatrix m = identity(8);
      m.at(6, 6) = m.at(7, 7) = 0.0;
      m.at(6, 7) = m.at(7, 6) = 1.0;
      return m;
    }
    case K::SWAP: {
      DenseMatrix m(4, 4);
      m.at(0, 0) = m.at(1, 2) = m.at(2, 1) = m.at(3, 3) = 1.0;
      return m;
    }
  }
  return identity(1);
}

// Full-width unitary of a gate: embeds via explicit basis-state action, so
// this route shares nothing with the library's tensor contraction.
inline DenseMatrix gate_unitary_at(const zhps::Gate& g, int width) {
  const DenseMatrix local = gate_unitary(g);
  const std::size_t dim = std::size_t(1) << width;
  DenseMatrix m(dim, dim);
  const int k = g.arity();
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t lcol = 0;
    for (int j = 0; j < k; ++j) {
      const int q = g.qubits[static_cast<std::size_t>(j)];
      lcol = (lcol << 1) | ((col >> (width - 1 - q)) & 1);
    }
    for (std::size_t lrow = 0; lrow < local.rows; ++lrow) {
      const cplx v = local.at(lrow, lcol);
      if (v == cplx{}) continue;
      std::size_t row = col;
      for (int j = 0; j < k; ++j) {
        const int q = g.qubits[static_cast<std::size_t>(j)];
        const std::size_t bit = (lrow >> (k - 1 - j)) & 1;
        row = (row & ~(std::size_t(1) << (width - 1 - q))) | (bit << (width - 1 - q));
      }
      m.at(row, col) += v;
    }
  }
  return m;
}

inline DenseMatrix circuit_unitary(const zhps::Circuit& c) {
  DenseMatrix m = identity(std::size_t(1) << c.width);
  for (const auto& g : c.gates) m = gate_unitary_at(g, c.width).times(m);
  return m;
}

inline double diff(const DenseMatrix& a, const DenseMatrix& b) { return a.max_abs_diff(b); }

} // namespace testutil
