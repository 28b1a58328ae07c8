#include "nrp/reweight.hpp"

#include <stdexcept>
#include <string>

#include "nrp/rng.hpp"

namespace nrp {

namespace {

// One side of the update. For the backward pass F=Y, G=X, own=w⃖, other=w⃗,
// d_own=d_in, d_other=d_out; the forward pass swaps every pair.
struct Side {
  const Matrix& F;
  const Matrix& G;
  Vector& own;
  const Vector& other;
  Vector d_own;
  Vector d_other;
};

void check_dims(const Graph& g, const EmbeddingPair& emb, const WeightState& w) {
  const auto n = g.n();
  if (emb.X.rows() != n || emb.Y.rows() != n || emb.X.cols() != emb.Y.cols() ||
      w.fwd.size() != n || w.bwd.size() != n) {
    throw std::invalid_argument("reweight: inconsistent dimensions");
  }
}

void check_cap(const Graph& g, const char* what) {
  if (g.n() > kNaiveMaxNodes) {
    throw std::invalid_argument(std::string(what) + ": n exceeds the cap of " +
                                std::to_string(kNaiveMaxNodes));
  }
}

Accelerators accelerators(const Side& s) {
  const Eigen::Index n = s.F.rows(), k = s.F.cols();
  Accelerators acc;
  acc.xi = Vector::Zero(k);
  acc.chi = Vector::Zero(k);
  acc.rho1 = Vector::Zero(k);
  acc.rho2 = Vector::Zero(k);
  acc.phi = Vector::Zero(k);
  Vector other_sq = s.other.cwiseAbs2();
  for (Eigen::Index u = 0; u < n; ++u) {
    auto g_u = s.G.row(u).transpose();
    acc.xi += s.d_other[u] * s.other[u] * g_u;
    acc.chi += s.other[u] * g_u;
    acc.rho1 += s.own[u] * s.F.row(u).transpose();
    acc.rho2 += other_sq[u] * s.own[u] * s.G.row(u).dot(s.F.row(u)) * g_u;
    acc.phi += other_sq[u] * g_u.cwiseAbs2();
  }
  acc.Lambda = s.G.transpose() * other_sq.asDiagonal() * s.G;
  return acc;
}

double exact_b1(const Side& s, Eigen::Index v, Vector* t_out) {
  Vector t = s.other.cwiseProduct(s.G * s.F.row(v).transpose());
  double b1 = t.squaredNorm() - t[v] * t[v];
  if (t_out) *t_out = std::move(t);
  return b1;
}

CoordinateTerms fast_terms(const Side& s, const Accelerators& acc, Eigen::Index v, TermMode mode) {
  const Eigen::Index k = s.F.cols();
  auto f = s.F.row(v).transpose();
  auto gv = s.G.row(v).transpose();
  const double wo = s.other[v];
  const double wv = s.own[v];
  const double fg = gv.dot(f);
  Vector chi_ex = acc.chi - wo * gv;

  CoordinateTerms t;
  t.a1 = acc.xi.dot(f);
  t.a2 = s.d_own[v] * chi_ex.dot(f);
  Vector lam_f = acc.Lambda * f;
  t.a3 = acc.rho1.dot(lam_f) - wv * f.dot(lam_f) - acc.rho2.dot(f) + wv * fg * fg * wo * wo;
  t.b2 = chi_ex.dot(f) * chi_ex.dot(f);
  if (mode == TermMode::kAccelerated) {
    double sum = 0.0;
    for (Eigen::Index r = 0; r < k; ++r) sum += f[r] * f[r] * (acc.phi[r] - wo * wo * gv[r] * gv[r]);
    t.b1 = 0.5 * static_cast<double>(k) * sum;
  } else {
    t.b1 = exact_b1(s, v, nullptr);
  }
  if (mode == TermMode::kExactCoordinate) {
    // Drop the self-pair u = v*, which the objective excludes.
    double t_self = wo * fg;
    t.a1 -= s.d_other[v] * t_self;
    t.a3 -= t_self * wo * gv.dot(acc.rho1 - wv * f);
  }
  return t;
}

WeightState run_pass(const Side& s, WeightState& w, double lambda, std::uint64_t seed,
                     const UpdateOptions& opts) {
  const Eigen::Index n = s.F.rows();
  Accelerators acc = accelerators(s);
  for (std::int64_t v : random_permutation(n, seed)) {
    CoordinateTerms t = fast_terms(s, acc, v, opts.mode);
    double old_w = s.own[v];
    double new_w = solve_weight(t, lambda, n);
    double delta = new_w - old_w;
    s.own[v] = new_w;
    auto f = s.F.row(v).transpose();
    auto gv = s.G.row(v).transpose();
    acc.rho1 += delta * f;
    acc.rho2 += delta * s.other[v] * s.other[v] * gv.dot(f) * gv;
    if (opts.observer) opts.observer(UpdateEvent{v, t, old_w, new_w, acc, w});
  }
  return w;
}

Side bwd_side(const Graph& g, const EmbeddingPair& emb, WeightState& w) {
  return Side{emb.Y, emb.X, w.bwd, w.fwd, g.in_degrees(), g.out_degrees()};
}

Side fwd_side(const Graph& g, const EmbeddingPair& emb, WeightState& w) {
  return Side{emb.X, emb.Y, w.fwd, w.bwd, g.out_degrees(), g.in_degrees()};
}

}  // namespace

double solve_weight(const CoordinateTerms& t, double lambda, NodeId n) {
  const double floor = 1.0 / static_cast<double>(n);
  const double den = t.b1 + t.b2 + lambda;
  if (den == 0.0) return floor;
  return std::max(floor, (t.a1 + t.a2 - t.a3) / den);
}

double objective(const Graph& g, const EmbeddingPair& emb, const WeightState& w) {
  check_dims(g, emb, w);
  check_cap(g, "objective");
  const NodeId n = g.n();
  Vector row = Vector::Zero(n), col = Vector::Zero(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      double s = w.fwd[u] * emb.X.row(u).dot(emb.Y.row(v)) * w.bwd[v];
      row[u] += s;
      col[v] += s;
    }
  }
  double o = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    double rc = col[v] - static_cast<double>(g.in_degree(v));
    double rr = row[v] - static_cast<double>(g.out_degree(v));
    o += rc * rc + rr * rr;
  }
  return o + w.lambda * (w.fwd.squaredNorm() + w.bwd.squaredNorm());
}

CoordinateTerms naive_terms_bwd(const Graph& g, const EmbeddingPair& emb, const WeightState& w,
                                NodeId vs) {
  check_dims(g, emb, w);
  check_cap(g, "naive_terms_bwd");
  const NodeId n = g.n();
  const auto& X = emb.X;
  const auto& Y = emb.Y;
  auto ys = Y.row(vs);
  CoordinateTerms t;
  double partial = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    double pu = w.fwd[u] * X.row(u).dot(ys);
    t.a1 += static_cast<double>(g.out_degree(u)) * pu;
    double inner = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (v == u || v == vs) continue;
      inner += w.fwd[u] * X.row(u).dot(Y.row(v)) * w.bwd[v];
    }
    t.a3 += inner * pu;
    if (u == vs) continue;
    partial += pu;
    t.b1 += pu * pu;
  }
  t.a2 = static_cast<double>(g.in_degree(vs)) * partial;
  t.b2 = partial * partial;
  return t;
}

CoordinateTerms naive_terms_fwd(const Graph& g, const EmbeddingPair& emb, const WeightState& w,
                                NodeId us) {
  check_dims(g, emb, w);
  check_cap(g, "naive_terms_fwd");
  const NodeId n = g.n();
  const auto& X = emb.X;
  const auto& Y = emb.Y;
  auto xs = X.row(us);
  CoordinateTerms t;
  double partial = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    double pv = xs.dot(Y.row(v)) * w.bwd[v];
    t.a1 += static_cast<double>(g.in_degree(v)) * pv;
    double inner = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      if (u == v || u == us) continue;
      inner += w.fwd[u] * X.row(u).dot(Y.row(v)) * w.bwd[v];
    }
    t.a3 += inner * pv;
    if (v == us) continue;
    partial += pv;
    t.b1 += pv * pv;
  }
  t.a2 = static_cast<double>(g.out_degree(us)) * partial;
  t.b2 = partial * partial;
  return t;
}

Accelerators bwd_accelerators(const Graph& g, const EmbeddingPair& emb, const WeightState& w) {
  check_dims(g, emb, w);
  WeightState copy = w;
  return accelerators(bwd_side(g, emb, copy));
}

Accelerators fwd_accelerators(const Graph& g, const EmbeddingPair& emb, const WeightState& w) {
  check_dims(g, emb, w);
  WeightState copy = w;
  return accelerators(fwd_side(g, emb, copy));
}

CoordinateTerms fast_terms_bwd(const Graph& g, const EmbeddingPair& emb, const WeightState& w,
                               const Accelerators& acc, NodeId v, TermMode mode) {
  check_dims(g, emb, w);
  WeightState copy = w;
  return fast_terms(bwd_side(g, emb, copy), acc, v, mode);
}

CoordinateTerms fast_terms_fwd(const Graph& g, const EmbeddingPair& emb, const WeightState& w,
                               const Accelerators& acc, NodeId u, TermMode mode) {
  check_dims(g, emb, w);
  WeightState copy = w;
  return fast_terms(fwd_side(g, emb, copy), acc, u, mode);
}

WeightState update_bwd_weights(const Graph& g, const EmbeddingPair& emb, WeightState w,
                               std::uint64_t seed, const UpdateOptions& opts) {
  check_dims(g, emb, w);
  return run_pass(bwd_side(g, emb, w), w, w.lambda, seed, opts);
}

WeightState update_fwd_weights(const Graph& g, const EmbeddingPair& emb, WeightState w,
                               std::uint64_t seed, const UpdateOptions& opts) {
  check_dims(g, emb, w);
  return run_pass(fwd_side(g, emb, w), w, w.lambda, seed, opts);
}

}  // namespace nrp
