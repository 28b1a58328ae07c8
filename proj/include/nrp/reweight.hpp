#pragma once

#include <cstdint>
#include <functional>

#include "nrp/graph.hpp"
#include "nrp/ppr.hpp"

namespace nrp {

struct WeightState {
  Vector fwd;
  Vector bwd;
  double lambda = 10.0;
};

/// Cached aggregates that make one weight update O(k²). For the forward pass
/// the same fields hold the mirrored sums (X and Y swapped, w⃗ and w⃖ swapped).
struct Accelerators {
  Vector xi;
  Vector chi;
  Vector rho1;
  Vector rho2;
  Matrix Lambda;
  Vector phi;
};

struct CoordinateTerms {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

enum class TermMode {
  /// Cached terms with the AM-GM estimate of b1.
  kAccelerated,
  /// Cached a-terms with b1 summed exactly.
  kExactB1,
  /// Exact minimizer of the objective along one weight: b1 summed exactly and
  /// the u = v* contributions removed from a1 and a3.
  kExactCoordinate,
};

struct UpdateEvent {
  NodeId node;
  CoordinateTerms terms;
  double old_weight;
  double new_weight;
  const Accelerators& acc;
  const WeightState& weights;
};

struct UpdateOptions {
  TermMode mode = TermMode::kAccelerated;
  std::function<void(const UpdateEvent&)> observer;
};

inline constexpr NodeId kNaiveMaxNodes = 2000;

/// Squared degree residuals of the off-diagonal weighted scores plus λ‖w‖².
double objective(const Graph& g, const EmbeddingPair& emb, const WeightState& w);

/// Backward-weight terms for v* by direct summation.
CoordinateTerms naive_terms_bwd(const Graph& g, const EmbeddingPair& emb, const WeightState& w,
                                NodeId v);
/// Forward-weight terms for u* by direct summation.
CoordinateTerms naive_terms_fwd(const Graph& g, const EmbeddingPair& emb, const WeightState& w,
                                NodeId u);

Accelerators bwd_accelerators(const Graph& g, const EmbeddingPair& emb, const WeightState& w);
Accelerators fwd_accelerators(const Graph& g, const EmbeddingPair& emb, const WeightState& w);

CoordinateTerms fast_terms_bwd(const Graph& g, const EmbeddingPair& emb, const WeightState& w,
                               const Accelerators& acc, NodeId v,
                               TermMode mode = TermMode::kAccelerated);
CoordinateTerms fast_terms_fwd(const Graph& g, const EmbeddingPair& emb, const WeightState& w,
                               const Accelerators& acc, NodeId u,
                               TermMode mode = TermMode::kAccelerated);

/// One Gauss-Seidel pass over all backward weights in a seeded random order.
WeightState update_bwd_weights(const Graph& g, const EmbeddingPair& emb, WeightState w,
                               std::uint64_t seed, const UpdateOptions& opts = {});
/// One Gauss-Seidel pass over all forward weights in a seeded random order.
WeightState update_fwd_weights(const Graph& g, const EmbeddingPair& emb, WeightState w,
                               std::uint64_t seed, const UpdateOptions& opts = {});

/// max{1/n, (a1+a2−a3)/(b1+b2+λ)}, or 1/n when the denominator vanishes.
double solve_weight(const CoordinateTerms& t, double lambda, NodeId n);

}  // namespace nrp
