#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nrp/graph.hpp"

namespace nrp {

/// Library version recorded in run manifests.
inline constexpr const char* kVersion = "1.0.0";

/// One row per node: label, then each value with 9 significant digits, tab-separated.
/// Rows are labelled by index when labels is empty.
void write_embedding_tsv(const Matrix& M, const std::vector<std::string>& labels, std::ostream& out);

/// `%.9g` formatting.
std::string format_value(double x);

}  // namespace nrp
