#pragma once

#include <cstdint>
#include <functional>

#include "nrp/graph.hpp"

namespace nrp {

struct SvdFactors {
  Matrix U;
  Vector sigma;
  Matrix V;
};

/// Matrix-free access to A (rows × cols) through block products.
struct LinearOperator {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::function<Matrix(const Matrix&)> apply;            // A·M
  std::function<Matrix(const Matrix&)> apply_transpose;  // Aᵀ·M

  static LinearOperator from_graph(const Graph& g);
  static LinearOperator from_dense(const Matrix& A);
};

struct BksvdOptions {
  /// Depth is q = max(min_depth, ceil(depth_constant · ln(rows) / sqrt(eps))).
  double depth_constant = 1.0;
  int min_depth = 4;
  /// Overrides the depth schedule when positive.
  int depth = 0;
  int oversampling = 8;
};

int bksvd_depth(Eigen::Index rows, double eps, const BksvdOptions& opts = {});

/// Randomized block-Krylov rank-k SVD. Columns of U and V are orthonormal,
/// sigma is non-increasing, and the largest-magnitude entry of each U column
/// is nonnegative.
SvdFactors bksvd(const LinearOperator& op, Eigen::Index k, double eps, std::uint64_t seed,
                 const BksvdOptions& opts = {});

/// Largest number of entries accepted by dense_svd_small.
inline constexpr Eigen::Index kDenseSvdMaxEntries = 4'000'000;

struct DenseSvd {
  Matrix U;
  Vector s;
  Matrix V;
};

/// Thin SVD of a small dense matrix, M = U·diag(s)·Vᵀ.
DenseSvd dense_svd_small(const Matrix& M);

/// Dense adjacency matrix; test-scale only (n ≤ 5000).
Matrix dense_adjacency(const Graph& g);

/// Exact rank-k truncation of the dense adjacency matrix, same sign convention as bksvd.
SvdFactors exact_truncated_svd(const Graph& g, Eigen::Index k);

/// Power-iteration estimate of ‖A − U·diag(sigma)·Vᵀ‖₂.
double residual_spectral_norm(const LinearOperator& op, const SvdFactors& f, int iterations = 50,
                              std::uint64_t seed = 1);

}  // namespace nrp
