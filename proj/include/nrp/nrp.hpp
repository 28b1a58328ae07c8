#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "nrp/graph.hpp"
#include "nrp/ppr.hpp"
#include "nrp/reweight.hpp"

namespace nrp {

struct NrpConfig {
  int k = 128;
  double alpha = 0.15;
  int ell1 = 20;
  int ell2 = 10;
  double epsilon = 0.2;
  double lambda = 10.0;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument describing the first invalid field.
void validate(const NrpConfig& cfg);

struct NrpHooks {
  /// Replaces the degree-based weight initialization.
  std::optional<WeightState> initial_weights;
  /// Receives each stage name and its wall time in seconds.
  std::function<void(const std::string&, double)> on_stage;
};

struct NrpResult {
  EmbeddingPair embedding;  // row-scaled by the learned weights
  EmbeddingPair base;       // factorization before reweighting
  WeightState weights;
};

NrpResult nrp_embed_detailed(const Graph& g, const NrpConfig& cfg, const NrpHooks& hooks = {});

EmbeddingPair nrp_embed(const Graph& g, const NrpConfig& cfg);

/// X_u · Y_v.
double score(const EmbeddingPair& emb, NodeId u, NodeId v);

}  // namespace nrp
