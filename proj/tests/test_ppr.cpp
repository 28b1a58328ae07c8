#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nrp/ppr.hpp"
#include "oracles.hpp"

namespace nrp {
namespace {

TEST(ExactPpr, DefaultTruncation) {
  // Smallest L with (1-alpha)^(L+1) <= 1e-12, found by walking up.
  int L = 0;
  double tail = 0.85;
  while (tail > 1e-12) {
    tail *= 0.85;
    ++L;
  }
  EXPECT_EQ(default_truncation(0.15), L);
  EXPECT_EQ(L, 170);
}

TEST(ExactPpr, MatchesDenseSeries) {
  std::mt19937_64 rng(1);
  Graph g = oracle::random_graph(25, 0.15, true, rng);
  PprMatrix pi = exact_ppr(g, 0.2, 30);
  EXPECT_LT((pi.values - oracle::dense_ppr(g, 0.2, 30)).cwiseAbs().maxCoeff(), 1e-14);
  PprMatrix trunc = exact_ppr(g, 0.2, 30, false);
  EXPECT_LT((trunc.values - oracle::dense_ppr(g, 0.2, 30, 1)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ExactPpr, SingleIsolatedNodeKeepsAlpha) {
  EdgeList list;
  list.n = 1;
  Graph g = Graph::from_edges(list);
  for (double alpha : {0.1, 0.5, 0.9}) EXPECT_DOUBLE_EQ(exact_ppr(g, alpha, 50).values(0, 0), alpha);
}

TEST(ExactPpr, RowSumsOnDanglingFreeGraph) {
  std::mt19937_64 rng(2);
  Graph g = oracle::random_graph(40, 0.2, false, rng);
  for (NodeId v = 0; v < g.n(); ++v) ASSERT_GT(g.out_degree(v), 0);
  for (int L : {0, 5, 168}) {
    PprMatrix pi = exact_ppr(g, 0.15, L);
    double expected = 1.0 - std::pow(0.85, L + 1);
    for (NodeId u = 0; u < g.n(); ++u) EXPECT_NEAR(pi.values.row(u).sum(), expected, 1e-12);
    EXPECT_GE(pi.values.minCoeff(), 0.0);
    EXPECT_LE(pi.values.maxCoeff(), 1.0);
  }
}

TEST(ExactPpr, ReversibilityOnUndirectedGraphs) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    Graph g = oracle::random_graph(30, 0.12, false, rng);
    Matrix pi = exact_ppr(g, 0.15, 168).values;
    for (NodeId u = 0; u < g.n(); ++u)
      for (NodeId v = 0; v < g.n(); ++v)
        EXPECT_NEAR(pi(u, v) * g.out_degree(u), pi(v, u) * g.in_degree(v), 1e-10);
  }
}

TEST(ExactPpr, RowVariantMatchesMatrix) {
  std::mt19937_64 rng(4);
  Graph g = oracle::random_graph(30, 0.1, true, rng);
  Matrix pi = exact_ppr(g, 0.15, 40).values;
  for (NodeId s : {0, 7, 29}) {
    Vector row = exact_ppr_row(g, s, 0.15, 40);
    EXPECT_LT((row.transpose() - pi.row(s)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(ExactPpr, RejectsBadArguments) {
  Graph g = oracle::fixture();
  EXPECT_THROW(exact_ppr(g, 0.0, 10), std::invalid_argument);
  EXPECT_THROW(exact_ppr(g, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(exact_ppr(g, 0.5, -1), std::invalid_argument);
}

TEST(ApproxPpr, EdgelessGraphGivesZeroX) {
  EdgeList list;
  list.n = 6;
  Graph g = Graph::from_edges(list);
  EmbeddingPair e = approx_ppr(g, 2, 0.15, 20, 0.2, 1);
  EXPECT_EQ(e.X.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(e.X.rows(), 6);
  EXPECT_EQ(e.X.cols(), 2);
}

TEST(ApproxPpr, SingleIterationIsScaledX1) {
  std::mt19937_64 rng(5);
  Graph g = oracle::random_graph(30, 0.1, true, rng);
  SvdFactors f = bksvd(LinearOperator::from_graph(g), 4, 0.2, 3);
  EmbeddingPair e = approx_ppr_from_factors(g, f, 0.15, 1);
  Vector root = f.sigma.cwiseSqrt();
  Matrix X1 = Matrix::Zero(30, 4);
  for (NodeId u = 0; u < g.n(); ++u) {
    double d = static_cast<double>(g.out_degree(u));
    X1.row(u) = d > 0 ? Matrix(f.U.row(u) * root.asDiagonal() / d) : Matrix::Zero(1, 4);
  }
  Matrix expected = 0.15 * 0.85 * X1 * (f.V * root.asDiagonal()).transpose();
  EXPECT_LT((e.X * e.Y.transpose() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ApproxPpr, SeriesMatchesDenseOracleForGivenFactors) {
  // With the exact factors, X Yᵀ equals Σ_{i=1..ℓ} α(1−α)^i P^{i−1} D⁻¹ A_k.
  std::mt19937_64 rng(6);
  Graph g = oracle::random_graph(20, 0.2, true, rng);
  SvdFactors f = exact_truncated_svd(g, 5);
  EmbeddingPair e = approx_ppr_from_factors(g, f, 0.2, 7);
  Matrix Ak = f.U * f.sigma.asDiagonal() * f.V.transpose();
  Vector inv = g.out_degrees();
  for (Eigen::Index i = 0; i < inv.size(); ++i) inv[i] = inv[i] > 0 ? 1.0 / inv[i] : 0.0;
  Matrix P = oracle::dense_p(g), term = inv.asDiagonal() * Ak, sum = Matrix::Zero(20, 20);
  for (int i = 1; i <= 7; ++i) {
    sum += 0.2 * std::pow(0.8, i) * term;
    term = P * term;
  }
  EXPECT_LT((e.X * e.Y.transpose() - sum).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ApproxPpr, DeterministicForSeed) {
  Graph g = oracle::fixture();
  EmbeddingPair a = approx_ppr(g, 2, 0.15, 20, 0.2, 42);
  EmbeddingPair b = approx_ppr(g, 2, 0.15, 20, 0.2, 42);
  EXPECT_EQ(a.X, b.X);
  EXPECT_EQ(a.Y, b.Y);
}

double max_offdiag_error(const Matrix& pi, const EmbeddingPair& e, Vector* row_sums) {
  Matrix err = (pi - e.X * e.Y.transpose()).cwiseAbs();
  err.diagonal().setZero();
  if (row_sums) *row_sums = err.rowwise().sum();
  return err.maxCoeff();
}

TEST(ApproxPpr, WithinBoundOnRandomGraph) {
  std::mt19937_64 rng(7);
  Graph g = oracle::random_graph(60, 0.08, true, rng);
  Matrix pi = exact_ppr(g, 0.15, 168).values;
  ErrorBounds exact_b = theorem1_bound(g, 8, 0.15, 20, 0.0);
  Vector rows;
  EXPECT_LE(max_offdiag_error(pi, approx_ppr_from_factors(g, exact_truncated_svd(g, 8), 0.15, 20), &rows),
            exact_b.entrywise);
  EXPECT_LE(rows.maxCoeff(), exact_b.row_sum);

  ErrorBounds b = theorem1_bound(g, 8, 0.15, 20, 0.2);
  EXPECT_LE(max_offdiag_error(pi, approx_ppr(g, 8, 0.15, 20, 0.2, 1), &rows), b.entrywise);
  EXPECT_LE(rows.maxCoeff(), b.row_sum);
}

TEST(TheoremBound, ExactLowRankLeavesOnlyTail) {
  Graph g = oracle::fixture();
  ErrorBounds b = theorem1_bound(g, 9, 0.15, 20, 0.5);
  EXPECT_EQ(b.sigma_next, 0.0);
  EXPECT_DOUBLE_EQ(b.entrywise, std::pow(0.85, 21));
  // Bipartite fixture has rank 6: σ_7 vanishes.
  ErrorBounds r = theorem1_bound(g, 6, 0.15, 20, 0.5);
  EXPECT_LT(r.sigma_next, 1e-12);
  EXPECT_NEAR(r.entrywise, std::pow(0.85, 21), 1e-12);
}

TEST(TheoremBound, VanishesAsAlphaApproachesOne) {
  Graph g = oracle::fixture();
  ErrorBounds b = theorem1_bound(g, 2, 1.0 - 1e-9, 20, 0.2);
  EXPECT_LT(b.entrywise, 1e-8);
  EXPECT_LT(b.row_sum, 1e-8);
}

TEST(TheoremBound, FixtureBoundCoversObservedError) {
  Graph g = oracle::fixture();
  ErrorBounds b = theorem1_bound(g, 2, 0.15, 20, 0.2);
  double sigma3 = Eigen::JacobiSVD<Matrix>(oracle::dense_a(g)).singularValues()[2];
  EXPECT_NEAR(b.sigma_next, sigma3, 1e-12);
  double expected = 1.2 * sigma3 * 0.85 * (1 - std::pow(0.85, 20)) + std::pow(0.85, 21);
  EXPECT_NEAR(b.entrywise, expected, 1e-12);
  Matrix pi = exact_ppr(g, 0.15, 168).values;
  EXPECT_LE(max_offdiag_error(pi, approx_ppr(g, 2, 0.15, 20, 0.2, 1), nullptr), b.entrywise);
}

}  // namespace
}  // namespace nrp
