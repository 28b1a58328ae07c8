#include "nrp/nrp.hpp"

#include <chrono>
#include <stdexcept>
#include <string>

#include "nrp/rng.hpp"

namespace nrp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void validate(const NrpConfig& cfg) {
  if (cfg.k < 2) throw std::invalid_argument("k must be at least 2");
  if (cfg.k % 2 != 0) throw std::invalid_argument("k must be even");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (cfg.ell1 < 1) throw std::invalid_argument("ell1 must be at least 1");
  if (cfg.ell2 < 0) throw std::invalid_argument("ell2 must be nonnegative");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(cfg.lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
}

NrpResult nrp_embed_detailed(const Graph& g, const NrpConfig& cfg, const NrpHooks& hooks) {
  validate(cfg);
  if (g.n() < 1) throw std::invalid_argument("graph has no nodes");
  const NodeId n = g.n();
  const Eigen::Index half = cfg.k / 2;
  if (half > n) {
    throw std::invalid_argument("k/2=" + std::to_string(half) + " exceeds the node count " +
                                std::to_string(n));
  }

  auto start = Clock::now();
  NrpResult res;
  res.base = approx_ppr(g, half, cfg.alpha, cfg.ell1, cfg.epsilon, derive_seed(cfg.seed, "svd"));
  if (hooks.on_stage) hooks.on_stage("approx_ppr", seconds_since(start));

  start = Clock::now();
  if (hooks.initial_weights) {
    res.weights = *hooks.initial_weights;
  } else {
    res.weights.fwd = g.out_degrees().cwiseMax(1.0 / static_cast<double>(n));
    res.weights.bwd = Vector::Ones(n);
  }
  res.weights.lambda = cfg.lambda;
  for (int epoch = 0; epoch < cfg.ell2; ++epoch) {
    const std::string tag = std::to_string(epoch);
    res.weights = update_bwd_weights(g, res.base, std::move(res.weights),
                                     derive_seed(cfg.seed, "permutation-pass-bwd-" + tag));
    res.weights = update_fwd_weights(g, res.base, std::move(res.weights),
                                     derive_seed(cfg.seed, "permutation-pass-fwd-" + tag));
  }
  if (hooks.on_stage) hooks.on_stage("reweight", seconds_since(start));

  res.embedding.X = res.weights.fwd.asDiagonal() * res.base.X;
  res.embedding.Y = res.weights.bwd.asDiagonal() * res.base.Y;
  return res;
}

EmbeddingPair nrp_embed(const Graph& g, const NrpConfig& cfg) {
  return nrp_embed_detailed(g, cfg).embedding;
}

double score(const EmbeddingPair& emb, NodeId u, NodeId v) {
  if (u < 0 || v < 0 || u >= emb.X.rows() || v >= emb.Y.rows()) {
    throw std::out_of_range("score: node id out of range");
  }
  return emb.X.row(u).dot(emb.Y.row(v));
}

}  // namespace nrp
