#pragma once

#include "zhps/diagram.hpp"
#include "zhps/pathsum.hpp"

namespace zhps {

/// Reads a hypergraph-like diagram off as a pure path-sum: one path variable
/// per spider, one phase term per H-box (coefficient = the box's phase label,
/// monomial = its neighborhood), signatures from the boundary maps, scalar
/// copied. Rejects general labels that are not unit-modulus with a
/// recognizable rational argument unless `allow_inexact` is set.
PurePathSum zh_to_pathsum(const Diagram& d, bool allow_inexact = false);

/// Rebuilds the diagram of a pure path-sum: one spider per variable, one
/// H-box per phase term. Inverse of zh_to_pathsum up to re-indexing of the
/// H-boxes.
Diagram pathsum_to_zh(const PurePathSum& e);

} // namespace zhps
