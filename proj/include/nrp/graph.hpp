#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace nrp {

using NodeId = std::int64_t;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Raised for malformed or out-of-range edge-list input.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EdgeList {
  bool directed = true;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::optional<NodeId> n;
  // Source line of each edge (1-based) when parsed from text; may be empty.
  std::vector<std::size_t> lines;
};

/// Edge list plus the external label of every dense node id.
struct LabeledEdgeList {
  EdgeList list;
  std::vector<std::string> labels;
};

/// Immutable CSR graph with out- and in-adjacency views.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(const EdgeList& edges);

  NodeId n() const { return n_; }
  std::int64_t m() const { return static_cast<std::int64_t>(out_targets_.size()); }
  bool undirected() const { return undirected_; }

  std::int64_t out_degree(NodeId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::int64_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  std::span<const NodeId> out_neighbors(NodeId v) const {
    return {out_targets_.data() + out_offsets_[v], static_cast<std::size_t>(out_degree(v))};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v], static_cast<std::size_t>(in_degree(v))};
  }

  bool has_edge(NodeId u, NodeId v) const;

  Vector out_degrees() const;
  Vector in_degrees() const;

  /// All directed edges in (u, v) lexicographic order.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  bool operator==(const Graph& other) const = default;

 private:
  NodeId n_ = 0;
  bool undirected_ = false;
  std::vector<std::int64_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::int64_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
};

/// P·M, with P the row-normalized adjacency; dangling rows of P are zero.
Matrix transition_multiply(const Graph& g, const Matrix& M);

/// A·M, or Aᵀ·M when transposed is set.
Matrix adjacency_multiply(const Graph& g, const Matrix& M, bool transposed);

/// Directed simple graph with exactly m distinct non-loop edges drawn uniformly.
Graph generate_erdos_renyi(NodeId n, std::int64_t m, std::uint64_t seed);

/// Parses `u v` lines; `#` and `%` lines are comments. Ids are used as given.
EdgeList parse_edge_list(std::istream& in, bool directed);

/// Parses arbitrary labels and remaps them to dense ids. Labels that are all
/// integers are ordered numerically, otherwise lexicographically.
LabeledEdgeList parse_labeled_edge_list(std::istream& in, bool directed);

/// Writes each directed edge once per line; undirected graphs emit u <= v only.
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace nrp
