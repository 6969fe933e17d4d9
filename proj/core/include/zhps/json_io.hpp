#pragma once

#include <string>

#include "zhps/diagram.hpp"
#include "zhps/oracle.hpp"
#include "zhps/pathsum.hpp"
#include "zhps/trace.hpp"

namespace zhps {

/// JSON forms. Exact phases and labels round-trip bit-exactly; inexact
/// coefficients serialize as numbers instead of fraction strings.
std::string scalar_to_json(const ScalarFactor& s);
ScalarFactor scalar_from_json_text(const std::string& text);

std::string diagram_to_json(const Diagram& d);
Diagram diagram_from_json_text(const std::string& text);

/// Variable ids are compacted to 1..k on write.
std::string pathsum_to_json(const PurePathSum& e);
PurePathSum pathsum_from_json_text(const std::string& text);

std::string trace_to_json(const RewriteTrace& t);

/// Graphviz dot rendering of a hypergraph-form diagram.
std::string diagram_to_dot(const Diagram& d);

/// Matrix dump: tab-separated "re+imj" rows, or nested JSON arrays.
std::string matrix_to_text(const DenseMatrix& m);
std::string matrix_to_json(const DenseMatrix& m);

} // namespace zhps
