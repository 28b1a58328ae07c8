#pragma once

#include <cstdint>

#include "nrp/bksvd.hpp"
#include "nrp/graph.hpp"

namespace nrp {

/// Forward (X) and backward (Y) embeddings, one row per node.
struct EmbeddingPair {
  Matrix X;
  Matrix Y;
};

struct PprMatrix {
  Matrix values;
  double alpha = 0.0;
  int L = 0;
};

inline constexpr NodeId kExactPprMaxNodes = 5000;

/// Smallest L with (1-alpha)^(L+1) < 1e-12.
int default_truncation(double alpha);

/// Σ_{i=0..L} α(1−α)^i P^i, or from i=1 when include_self_term is false.
PprMatrix exact_ppr(const Graph& g, double alpha, int L, bool include_self_term = true);

/// Single PPR row from `source`, computed without materializing the full matrix.
Vector exact_ppr_row(const Graph& g, NodeId source, double alpha, int L);

/// Approximate PPR factorization seeded by a randomized SVD of A.
EmbeddingPair approx_ppr(const Graph& g, Eigen::Index k, double alpha, int ell1, double eps,
                         std::uint64_t seed);

/// Same iteration as approx_ppr starting from given SVD factors.
EmbeddingPair approx_ppr_from_factors(const Graph& g, const SvdFactors& f, double alpha, int ell1);

struct ErrorBounds {
  double entrywise = 0.0;
  double row_sum = 0.0;
  double sigma_next = 0.0;
};

ErrorBounds error_bounds(NodeId n, double sigma_next, double alpha, int ell1, double eps);

/// Error bounds with σ_{k+1} of the dense adjacency matrix.
ErrorBounds theorem1_bound(const Graph& g, Eigen::Index k, double alpha, int ell1, double eps);

}  // namespace nrp
