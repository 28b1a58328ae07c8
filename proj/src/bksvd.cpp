#include "nrp/bksvd.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "nrp/rng.hpp"

namespace nrp {

namespace {

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix M(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) M(r, c) = normal(rng);
  return M;
}

void project_out(const Matrix& basis, Eigen::Index used, Matrix& Z) {
  if (used == 0) return;
  auto prev = basis.leftCols(used);
  for (int pass = 0; pass < 2; ++pass) Z.noalias() -= prev * (prev.transpose() * Z);
}

// Orthonormalizes Z against the first `used` columns of basis, then internally.
// Columns that carry no new direction (rank deficiency, or an exhausted Krylov
// space) are replaced with fresh Gaussian vectors.
Matrix orthonormalize_block(const Matrix& basis, Eigen::Index used, Matrix Z, Rng& rng) {
  const Eigen::Index cols = Z.cols();
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double scale = Z.colwise().norm().maxCoeff();
    project_out(basis, used, Z);
    Eigen::ColPivHouseholderQR<Matrix> qr(Z);
    Eigen::Index rank = 0;
    if (scale > 0.0) {
      auto diag = qr.matrixR().diagonal().cwiseAbs();
      while (rank < cols && diag[rank] > 1e-10 * scale) ++rank;
    }
    Matrix Q = qr.householderQ() * Matrix::Identity(Z.rows(), cols);
    if (rank == cols) return Q;
    Z.leftCols(rank) = Q.leftCols(rank);
    Z.rightCols(cols - rank) = gaussian(Z.rows(), cols - rank, rng);
  }
  throw std::runtime_error("bksvd: could not extend the Krylov basis");
}

// Largest-magnitude entry of each U column made nonnegative; V follows.
void apply_sign_convention(Matrix& U, Matrix& V) {
  for (Eigen::Index j = 0; j < U.cols(); ++j) {
    Eigen::Index idx = 0;
    U.col(j).cwiseAbs().maxCoeff(&idx);
    if (U(idx, j) < 0) {
      U.col(j) *= -1.0;
      V.col(j) *= -1.0;
    }
  }
}

}  // namespace

LinearOperator LinearOperator::from_graph(const Graph& g) {
  LinearOperator op;
  op.rows = op.cols = g.n();
  op.apply = [&g](const Matrix& M) { return adjacency_multiply(g, M, false); };
  op.apply_transpose = [&g](const Matrix& M) { return adjacency_multiply(g, M, true); };
  return op;
}

LinearOperator LinearOperator::from_dense(const Matrix& A) {
  LinearOperator op;
  op.rows = A.rows();
  op.cols = A.cols();
  op.apply = [A](const Matrix& M) -> Matrix { return A * M; };
  op.apply_transpose = [A](const Matrix& M) -> Matrix { return A.transpose() * M; };
  return op;
}

int bksvd_depth(Eigen::Index rows, double eps, const BksvdOptions& opts) {
  if (opts.depth > 0) return opts.depth;
  double raw = opts.depth_constant * std::log(static_cast<double>(std::max<Eigen::Index>(rows, 2))) /
               std::sqrt(eps);
  return std::max(opts.min_depth, static_cast<int>(std::ceil(raw)));
}

SvdFactors bksvd(const LinearOperator& op, Eigen::Index k, double eps, std::uint64_t seed,
                 const BksvdOptions& opts) {
  const Eigen::Index rows = op.rows, cols = op.cols;
  const Eigen::Index rank_cap = std::min(rows, cols);
  if (k < 1 || k > rank_cap) {
    throw std::invalid_argument("bksvd: rank " + std::to_string(k) + " outside [1, " +
                                std::to_string(rank_cap) + "]");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("bksvd: eps must lie in (0, 1)");

  const int q = bksvd_depth(rows, eps, opts);
  const Eigen::Index b = std::min<Eigen::Index>(k + opts.oversampling, rank_cap);
  const Eigen::Index max_dim = std::min<Eigen::Index>(static_cast<Eigen::Index>(q) * b, rank_cap);

  Rng rng(seed);
  Matrix Q(rows, max_dim);
  Eigen::Index used = 0;
  Matrix block = orthonormalize_block(Q, 0, op.apply(gaussian(cols, b, rng)), rng);
  Q.leftCols(b) = block;
  used = b;
  for (int i = 1; i < q && used < max_dim; ++i) {
    Eigen::Index take = std::min(block.cols(), max_dim - used);
    Matrix Z = op.apply(op.apply_transpose(block));
    block = orthonormalize_block(Q, used, Z.leftCols(take), rng);
    Q.middleCols(used, take) = block;
    used += take;
  }

  // Rayleigh-Ritz: QᵀA = (AᵀQ)ᵀ = (Q₂R)ᵀ, so the SVD of Rᵀ gives both sides.
  const Eigen::Index K = used;
  Matrix W = op.apply_transpose(Q);
  Eigen::HouseholderQR<Eigen::Ref<Matrix>> qr(W);
  Matrix Rt = qr.matrixQR().topRows(K).triangularView<Eigen::Upper>().toDenseMatrix().transpose();
  DenseSvd small = dense_svd_small(Rt);

  SvdFactors f;
  f.U = Q * small.U.leftCols(k);
  f.sigma = small.s.head(k);
  f.V = Matrix::Zero(cols, k);
  f.V.topRows(K) = small.V.leftCols(k);
  f.V.applyOnTheLeft(qr.householderQ());
  apply_sign_convention(f.U, f.V);
  return f;
}

DenseSvd dense_svd_small(const Matrix& M) {
  if (M.size() > kDenseSvdMaxEntries) {
    throw std::invalid_argument("dense_svd_small: " + std::to_string(M.size()) +
                                " entries exceed the limit of " + std::to_string(kDenseSvdMaxEntries));
  }
  if (!M.allFinite()) throw std::invalid_argument("dense_svd_small: non-finite entry");
  Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Matrix dense_adjacency(const Graph& g) {
  if (g.n() > 5000) throw std::invalid_argument("dense_adjacency: n exceeds 5000");
  Matrix A = Matrix::Zero(g.n(), g.n());
  for (const auto& [u, v] : g.edges()) A(u, v) = 1.0;
  return A;
}

SvdFactors exact_truncated_svd(const Graph& g, Eigen::Index k) {
  if (k < 1 || k > g.n()) throw std::invalid_argument("exact_truncated_svd: rank out of range");
  DenseSvd full = dense_svd_small(dense_adjacency(g));
  SvdFactors f{full.U.leftCols(k), full.s.head(k), full.V.leftCols(k)};
  apply_sign_convention(f.U, f.V);
  return f;
}

double residual_spectral_norm(const LinearOperator& op, const SvdFactors& f, int iterations,
                              std::uint64_t seed) {
  Rng rng(seed);
  Matrix x = gaussian(op.cols, 1, rng);
  auto apply_e = [&](const Matrix& v) -> Matrix {
    return op.apply(v) - f.U * (f.sigma.asDiagonal() * (f.V.transpose() * v));
  };
  auto apply_et = [&](const Matrix& v) -> Matrix {
    return op.apply_transpose(v) - f.V * (f.sigma.asDiagonal() * (f.U.transpose() * v));
  };
  double estimate = 0.0;
  for (int i = 0; i < iterations; ++i) {
    double nx = x.norm();
    if (nx == 0.0) return 0.0;
    x /= nx;
    Matrix y = apply_e(x);
    estimate = y.norm();
    x = apply_et(y);
  }
  return estimate;
}

}  // namespace nrp
