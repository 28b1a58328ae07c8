#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "nrp/graph.hpp"
#include "nrp/ppr.hpp"

namespace nrp {

using NodePair = std::pair<NodeId, NodeId>;

struct LinkSplit {
  Graph train;
  std::vector<NodePair> test_pos;
  std::vector<NodePair> test_neg;
};

struct MetricReport {
  std::optional<double> auc;
  std::map<std::size_t, double> precision_at_k;
};

/// Negative sampling gives up after this many draws per requested pair.
inline constexpr std::int64_t kNegativeDrawsPerPair = 1000;

/// Removes round(ratio · edges) edges (undirected edges as a unit) and samples
/// as many non-edges. Undirected pairs are reported with u < v.
LinkSplit split_edges(const Graph& g, double remove_ratio, std::uint64_t seed);

/// Mann-Whitney statistic with ties counted as one half.
double auc(const std::vector<double>& pos, const std::vector<double>& neg);

/// Fraction of true edges among the top-K scored candidates, ties broken by
/// (u, v) ascending.
MetricReport precision_at_k(const EmbeddingPair& emb, const Graph& g,
                            const std::vector<NodePair>& candidates,
                            const std::vector<std::size_t>& ks);

inline constexpr NodeId kAllPairsMaxNodes = 1500;

/// All ordered pairs u != v when n ≤ 1500, otherwise a seeded 1% sample of them.
std::vector<NodePair> reconstruction_candidates(NodeId n, std::uint64_t seed);

/// Link-prediction AUC of embeddings on a split.
double link_auc(const EmbeddingPair& emb, const LinkSplit& split);

/// `metric<TAB>param<TAB>value` lines.
void write_metric_tsv(const MetricReport& report, std::ostream& out);

}  // namespace nrp
