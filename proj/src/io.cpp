#include "nrp/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace nrp {

std::string format_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void write_embedding_tsv(const Matrix& M, const std::vector<std::string>& labels, std::ostream& out) {
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != M.rows()) {
    throw std::invalid_argument("write_embedding_tsv: label count does not match row count");
  }
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    out << (labels.empty() ? std::to_string(r) : labels[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < M.cols(); ++c) out << '\t' << format_value(M(r, c));
    out << '\n';
  }
}

}  // namespace nrp
