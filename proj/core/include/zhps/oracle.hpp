#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zhps/diagram.hpp"
#include "zhps/pathsum.hpp"

namespace zhps {

/// Dense complex matrix with power-of-two dimensions. Row index packs the
/// output bits (first output = most significant), column index the inputs.
struct DenseMatrix {
  std::size_t rows{1}, cols{1};
  std::vector<std::complex<double>> data;

  DenseMatrix() : data(1, {1.0, 0.0}) {}
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, {0.0, 0.0}) {}

  std::complex<double>& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const std::complex<double>& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  DenseMatrix times(const DenseMatrix& o) const;
  DenseMatrix scaled(std::complex<double> z) const;
  double max_abs_diff(const DenseMatrix& o) const;
  std::string str() const;
};

/// Default cap on brute-force work (number of summed Boolean variables for a
/// path-sum, total wires for a diagram). Overridable via ZHPS_ORACLE_CAP.
int oracle_cap();

/// Brute force over all 2^k assignments of the path variables.
DenseMatrix eval_pathsum(const PurePathSum& e, std::optional<int> cap = std::nullopt);

/// Tensor-network contraction of a raw term, one tensor per generator, wires
/// eliminated greedily by smallest resulting tensor. Independent of the
/// path-sum evaluation route.
DenseMatrix eval_diagram(const RawDiagram& d, std::optional<int> cap = std::nullopt);
DenseMatrix eval_diagram(const Diagram& d, std::optional<int> cap = std::nullopt);

enum class CompareMode { ExactScalar, UpToGlobalPhase };

struct CompareResult {
  enum class Verdict { Equal, Unequal, ShapeMismatch } verdict;
  double max_abs_diff{0.0};
  std::size_t row{0}, col{0}; // witness entry for Unequal
  bool equal() const { return verdict == Verdict::Equal; }
};

CompareResult compare(const DenseMatrix& a, const DenseMatrix& b,
                      CompareMode mode = CompareMode::ExactScalar, double tol = 1e-9);

} // namespace zhps
