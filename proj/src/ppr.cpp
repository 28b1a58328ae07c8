#include "nrp/ppr.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nrp {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

}  // namespace

int default_truncation(double alpha) {
  check_alpha(alpha);
  int L = 0;
  while (std::pow(1.0 - alpha, L + 1) >= 1e-12) ++L;
  return L;
}

PprMatrix exact_ppr(const Graph& g, double alpha, int L, bool include_self_term) {
  check_alpha(alpha);
  if (L < 0) throw std::invalid_argument("exact_ppr: L must be nonnegative");
  if (g.n() > kExactPprMaxNodes) {
    throw std::invalid_argument("exact_ppr: n=" + std::to_string(g.n()) + " exceeds the cap of " +
                                std::to_string(kExactPprMaxNodes));
  }
  // Row u of P^i is e_uᵀP^i, so iterate on the identity: M_i = P·M_{i-1}.
  Matrix term = Matrix::Identity(g.n(), g.n());
  Matrix sum = Matrix::Zero(g.n(), g.n());
  double coef = alpha;
  for (int i = 0; i <= L; ++i) {
    if (i > 0) {
      term = transition_multiply(g, term);
      coef *= 1.0 - alpha;
    }
    if (i > 0 || include_self_term) sum += coef * term;
  }
  return {std::move(sum), alpha, L};
}

Vector exact_ppr_row(const Graph& g, NodeId source, double alpha, int L) {
  check_alpha(alpha);
  if (source < 0 || source >= g.n()) throw std::invalid_argument("exact_ppr_row: source out of range");
  // Push the walk distribution forward: r_{i+1}[v] = Σ_{u→v} r_i[u]/d_out(u).
  Vector r = Vector::Zero(g.n());
  r[source] = 1.0;
  Vector sum = alpha * r;
  double coef = alpha;
  for (int i = 1; i <= L; ++i) {
    Vector next = Vector::Zero(g.n());
    for (NodeId u = 0; u < g.n(); ++u) {
      if (r[u] == 0.0 || g.out_degree(u) == 0) continue;
      double share = r[u] / static_cast<double>(g.out_degree(u));
      for (NodeId v : g.out_neighbors(u)) next[v] += share;
    }
    r.swap(next);
    coef *= 1.0 - alpha;
    sum += coef * r;
  }
  return sum;
}

EmbeddingPair approx_ppr_from_factors(const Graph& g, const SvdFactors& f, double alpha, int ell1) {
  check_alpha(alpha);
  if (ell1 < 1) throw std::invalid_argument("ell1 must be at least 1");
  Vector root = f.sigma.cwiseMax(0.0).cwiseSqrt();
  Vector inv_deg(g.n());
  for (NodeId v = 0; v < g.n(); ++v) {
    auto d = g.out_degree(v);
    inv_deg[v] = d > 0 ? 1.0 / static_cast<double>(d) : 0.0;
  }
  Matrix X1 = inv_deg.asDiagonal() * (f.U * root.asDiagonal());
  Matrix X = X1;
  for (int i = 2; i <= ell1; ++i) X = (1.0 - alpha) * transition_multiply(g, X) + X1;
  X *= alpha * (1.0 - alpha);
  return {std::move(X), f.V * root.asDiagonal()};
}

EmbeddingPair approx_ppr(const Graph& g, Eigen::Index k, double alpha, int ell1, double eps,
                         std::uint64_t seed) {
  check_alpha(alpha);
  if (ell1 < 1) throw std::invalid_argument("ell1 must be at least 1");
  SvdFactors f = bksvd(LinearOperator::from_graph(g), k, eps, seed);
  return approx_ppr_from_factors(g, f, alpha, ell1);
}

ErrorBounds error_bounds(NodeId n, double sigma_next, double alpha, int ell1, double eps) {
  double decay = (1.0 - alpha) * (1.0 - std::pow(1.0 - alpha, ell1));
  double tail = std::pow(1.0 - alpha, ell1 + 1);
  double core = (1.0 + eps) * sigma_next * decay;
  return {core + tail, std::sqrt(static_cast<double>(n)) * core + tail, sigma_next};
}

ErrorBounds theorem1_bound(const Graph& g, Eigen::Index k, double alpha, int ell1, double eps) {
  check_alpha(alpha);
  if (g.n() > kExactPprMaxNodes) throw std::invalid_argument("theorem1_bound: n exceeds the oracle cap");
  double sigma_next = 0.0;
  if (k < g.n()) sigma_next = dense_svd_small(dense_adjacency(g)).s[k];
  return error_bounds(g.n(), sigma_next, alpha, ell1, eps);
}

}  // namespace nrp
