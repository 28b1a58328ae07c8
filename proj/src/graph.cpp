#include "nrp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <unordered_set>

#include "nrp/rng.hpp"

namespace nrp {

namespace {

void build_csr(NodeId n, std::vector<std::pair<NodeId, NodeId>>& pairs,
               std::vector<std::int64_t>& offsets, std::vector<NodeId>& targets) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  targets.resize(pairs.size());
  for (const auto& [u, v] : pairs) ++offsets[u + 1];
  for (NodeId i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  for (std::size_t i = 0; i < pairs.size(); ++i) targets[i] = pairs[i].second;
}

void check_rows(const Graph& g, const Matrix& M, const char* what) {
  if (M.rows() != g.n()) {
    throw std::invalid_argument(std::string(what) + ": matrix has " + std::to_string(M.rows()) +
                                " rows, graph has " + std::to_string(g.n()) + " nodes");
  }
}

bool is_comment_or_blank(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#' || line[pos] == '%';
}

bool split_pair(const std::string& line, std::string& a, std::string& b) {
  std::istringstream ss(line);
  std::string extra;
  if (!(ss >> a >> b)) return false;
  return !(ss >> extra);
}

std::optional<NodeId> parse_id(const std::string& s) {
  NodeId value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

Graph Graph::from_edges(const EdgeList& list) {
  NodeId max_id = -1;
  for (std::size_t i = 0; i < list.edges.size(); ++i) {
    const auto& [u, v] = list.edges[i];
    if (u < 0 || v < 0 || (list.n && (u >= *list.n || v >= *list.n))) {
      std::string where = i < list.lines.size() ? "line " + std::to_string(list.lines[i])
                                                : "edge " + std::to_string(i);
      throw IngestError(where + ": node id out of range (" + std::to_string(u) + ", " +
                        std::to_string(v) + ")");
    }
    max_id = std::max({max_id, u, v});
  }
  Graph g;
  g.n_ = list.n ? *list.n : max_id + 1;
  if (g.n_ < 0) throw IngestError("negative node count");
  g.undirected_ = !list.directed;

  std::vector<std::pair<NodeId, NodeId>> fwd;
  fwd.reserve(list.edges.size() * (list.directed ? 1 : 2));
  for (const auto& [u, v] : list.edges) {
    fwd.emplace_back(u, v);
    if (!list.directed && u != v) fwd.emplace_back(v, u);
  }
  std::vector<std::pair<NodeId, NodeId>> rev;
  rev.reserve(fwd.size());
  for (const auto& [u, v] : fwd) rev.emplace_back(v, u);
  build_csr(g.n_, fwd, g.out_offsets_, g.out_targets_);
  build_csr(g.n_, rev, g.in_offsets_, g.in_sources_);
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = out_neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Vector Graph::out_degrees() const {
  Vector d(n_);
  for (NodeId v = 0; v < n_; ++v) d[v] = static_cast<double>(out_degree(v));
  return d;
}

Vector Graph::in_degrees() const {
  Vector d(n_);
  for (NodeId v = 0; v < n_; ++v) d[v] = static_cast<double>(in_degree(v));
  return d;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(out_targets_.size());
  for (NodeId u = 0; u < n_; ++u)
    for (NodeId v : out_neighbors(u)) out.emplace_back(u, v);
  return out;
}

Matrix transition_multiply(const Graph& g, const Matrix& M) {
  check_rows(g, M, "transition_multiply");
  Matrix out = Matrix::Zero(M.rows(), M.cols());
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    const double* in = M.col(c).data();
    double* dst = out.col(c).data();
    for (NodeId u = 0; u < g.n(); ++u) {
      auto nb = g.out_neighbors(u);
      if (nb.empty()) continue;
      double s = 0.0;
      for (NodeId v : nb) s += in[v];
      dst[u] = s / static_cast<double>(nb.size());
    }
  }
  return out;
}

Matrix adjacency_multiply(const Graph& g, const Matrix& M, bool transposed) {
  check_rows(g, M, "adjacency_multiply");
  Matrix out(M.rows(), M.cols());
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    const double* in = M.col(c).data();
    double* dst = out.col(c).data();
    for (NodeId u = 0; u < g.n(); ++u) {
      auto nb = transposed ? g.in_neighbors(u) : g.out_neighbors(u);
      double s = 0.0;
      for (NodeId v : nb) s += in[v];
      dst[u] = s;
    }
  }
  return out;
}

Graph generate_erdos_renyi(NodeId n, std::int64_t m, std::uint64_t seed) {
  if (n < 0 || m < 0) throw std::invalid_argument("generate_erdos_renyi: negative size");
  const std::int64_t slots = n * (n > 0 ? n - 1 : 0);
  if (m > slots) {
    throw std::invalid_argument("generate_erdos_renyi: " + std::to_string(m) +
                                " edges do not fit in " + std::to_string(slots) + " slots");
  }
  // Floyd's sampling over slot indices: exactly m draws, uniform without replacement.
  Rng rng(seed);
  std::unordered_set<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(m) * 2);
  EdgeList list;
  list.directed = true;
  list.n = n;
  list.edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t j = slots - m; j < slots; ++j) {
    std::int64_t t = std::uniform_int_distribution<std::int64_t>(0, j)(rng);
    std::int64_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    NodeId u = pick / (n - 1);
    NodeId r = pick % (n - 1);
    list.edges.emplace_back(u, r < u ? r : r + 1);
  }
  return Graph::from_edges(list);
}

EdgeList parse_edge_list(std::istream& in, bool directed) {
  EdgeList list;
  list.directed = directed;
  std::string line, a, b;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    auto u = split_pair(line, a, b) ? parse_id(a) : std::nullopt;
    auto v = u ? parse_id(b) : std::nullopt;
    if (!u || !v) throw IngestError("line " + std::to_string(lineno) + ": expected 'u v', got '" + line + "'");
    if (*u < 0 || *v < 0) throw IngestError("line " + std::to_string(lineno) + ": negative node id");
    list.edges.emplace_back(*u, *v);
    list.lines.push_back(lineno);
  }
  return list;
}

LabeledEdgeList parse_labeled_edge_list(std::istream& in, bool directed) {
  std::vector<std::pair<std::string, std::string>> raw;
  std::vector<std::size_t> lines;
  std::string line, a, b;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    if (!split_pair(line, a, b)) throw IngestError("line " + std::to_string(lineno) + ": expected 'u v', got '" + line + "'");
    raw.emplace_back(a, b);
    lines.push_back(lineno);
  }

  bool numeric = true;
  std::map<std::string, NodeId> seen;
  for (const auto& [x, y] : raw) {
    seen.emplace(x, 0);
    seen.emplace(y, 0);
  }
  std::vector<std::string> labels;
  labels.reserve(seen.size());
  for (const auto& kv : seen) {
    labels.push_back(kv.first);
    numeric = numeric && parse_id(kv.first).has_value();
  }
  if (numeric) {
    std::sort(labels.begin(), labels.end(), [](const std::string& x, const std::string& y) {
      return *parse_id(x) < *parse_id(y);
    });
  }
  for (std::size_t i = 0; i < labels.size(); ++i) seen[labels[i]] = static_cast<NodeId>(i);

  LabeledEdgeList out;
  out.list.directed = directed;
  out.list.n = static_cast<NodeId>(labels.size());
  out.list.lines = std::move(lines);
  out.list.edges.reserve(raw.size());
  for (const auto& [x, y] : raw) out.list.edges.emplace_back(seen[x], seen[y]);
  out.labels = std::move(labels);
  return out;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (const auto& [u, v] : g.edges()) {
    if (g.undirected() && u > v) continue;
    out << u << '\t' << v << '\n';
  }
}

}  // namespace nrp
