#include "nrp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "nrp/nrp.hpp"
#include "nrp/rng.hpp"

namespace nrp {

namespace {

std::uint64_t pair_key(NodeId u, NodeId v, NodeId n) {
  return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(v);
}

}  // namespace

LinkSplit split_edges(const Graph& g, double remove_ratio, std::uint64_t seed) {
  if (!(remove_ratio >= 0.0 && remove_ratio <= 1.0)) {
    throw std::invalid_argument("remove ratio must lie in [0, 1]");
  }
  std::vector<NodePair> units;
  for (const auto& [u, v] : g.edges()) {
    if (g.undirected() && u > v) continue;
    units.emplace_back(u, v);
  }
  if (units.size() < 10) {
    throw std::invalid_argument("split_edges: need at least 10 edges, got " + std::to_string(units.size()));
  }
  const auto count = static_cast<std::size_t>(std::llround(remove_ratio * static_cast<double>(units.size())));

  Rng rng(derive_seed(seed, "split"));
  std::shuffle(units.begin(), units.end(), rng);
  LinkSplit split;
  split.test_pos.assign(units.begin(), units.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(split.test_pos.begin(), split.test_pos.end());

  EdgeList train;
  train.directed = !g.undirected();
  train.n = g.n();
  train.edges.assign(units.begin() + static_cast<std::ptrdiff_t>(count), units.end());
  split.train = Graph::from_edges(train);

  Rng neg_rng(derive_seed(seed, "negatives"));
  std::uniform_int_distribution<NodeId> pick(0, g.n() - 1);
  std::unordered_set<std::uint64_t> taken;
  const std::int64_t max_draws = kNegativeDrawsPerPair * static_cast<std::int64_t>(std::max<std::size_t>(count, 1));
  std::int64_t draws = 0;
  while (split.test_neg.size() < count) {
    if (++draws > max_draws) {
      throw std::runtime_error("split_edges: negative sampling failed after " + std::to_string(max_draws) +
                               " draws (graph nearly complete)");
    }
    NodeId u = pick(neg_rng), v = pick(neg_rng);
    if (u == v || g.has_edge(u, v)) continue;
    if (g.undirected() && u > v) std::swap(u, v);
    if (!taken.insert(pair_key(u, v, g.n())).second) continue;
    split.test_neg.emplace_back(u, v);
  }
  return split;
}

double auc(const std::vector<double>& pos, const std::vector<double>& neg) {
  if (pos.empty() || neg.empty()) throw std::invalid_argument("auc: empty score list");
  std::vector<double> sorted_neg = neg;
  std::sort(sorted_neg.begin(), sorted_neg.end());
  double wins = 0.0;
  for (double p : pos) {
    auto lo = std::lower_bound(sorted_neg.begin(), sorted_neg.end(), p);
    auto hi = std::upper_bound(lo, sorted_neg.end(), p);
    wins += static_cast<double>(lo - sorted_neg.begin()) + 0.5 * static_cast<double>(hi - lo);
  }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

MetricReport precision_at_k(const EmbeddingPair& emb, const Graph& g,
                            const std::vector<NodePair>& candidates,
                            const std::vector<std::size_t>& ks) {
  if (candidates.empty()) throw std::invalid_argument("precision_at_k: no candidates");
  for (auto k : ks) {
    if (k == 0 || k > candidates.size()) {
      throw std::invalid_argument("precision_at_k: K=" + std::to_string(k) + " outside [1, " +
                                  std::to_string(candidates.size()) + "]");
    }
  }
  std::vector<double> scores(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i)
    scores[i] = score(emb, candidates[i].first, candidates[i].second);
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return candidates[a] < candidates[b];
  });
  MetricReport report;
  std::size_t hits = 0, seen = 0;
  std::vector<std::size_t> sorted_ks = ks;
  std::sort(sorted_ks.begin(), sorted_ks.end());
  for (auto k : sorted_ks) {
    for (; seen < k; ++seen) {
      const auto& [u, v] = candidates[order[seen]];
      if (g.has_edge(u, v)) ++hits;
    }
    report.precision_at_k[k] = static_cast<double>(hits) / static_cast<double>(k);
  }
  return report;
}

std::vector<NodePair> reconstruction_candidates(NodeId n, std::uint64_t seed) {
  std::vector<NodePair> out;
  if (n <= kAllPairsMaxNodes) {
    out.reserve(static_cast<std::size_t>(n * (n > 0 ? n - 1 : 0)));
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v)
        if (u != v) out.emplace_back(u, v);
    return out;
  }
  const auto total = static_cast<double>(n) * static_cast<double>(n - 1);
  const auto want = static_cast<std::size_t>(std::ceil(0.01 * total));
  Rng rng(derive_seed(seed, "candidates"));
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  std::unordered_set<std::uint64_t> taken;
  taken.reserve(want * 2);
  out.reserve(want);
  while (out.size() < want) {
    NodeId u = pick(rng), v = pick(rng);
    if (u == v || !taken.insert(pair_key(u, v, n)).second) continue;
    out.emplace_back(u, v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double link_auc(const EmbeddingPair& emb, const LinkSplit& split) {
  std::vector<double> pos, neg;
  pos.reserve(split.test_pos.size());
  neg.reserve(split.test_neg.size());
  for (const auto& [u, v] : split.test_pos) pos.push_back(score(emb, u, v));
  for (const auto& [u, v] : split.test_neg) neg.push_back(score(emb, u, v));
  return auc(pos, neg);
}

void write_metric_tsv(const MetricReport& report, std::ostream& out) {
  auto flags = out.flags();
  out << std::setprecision(12);
  if (report.auc) out << "auc\t-\t" << *report.auc << '\n';
  for (const auto& [k, p] : report.precision_at_k) out << "precision_at_k\t" << k << '\t' << p << '\n';
  out.flags(flags);
}

}  // namespace nrp
