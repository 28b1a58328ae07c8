// Command-line driver: embed, eval-link, eval-reconstruct, ppr-exact.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nrp/eval.hpp"
#include "nrp/graph.hpp"
#include "nrp/io.hpp"
#include "nrp/nrp.hpp"
#include "nrp/ppr.hpp"
#include "nrp/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct GraphArgs {
  std::string input;
  bool undirected = false;
  bool raw_ids = false;
};

struct Loaded {
  nrp::Graph graph;
  std::vector<std::string> labels;
};

struct RunArgs {
  GraphArgs graph;
  nrp::NrpConfig cfg;
  std::string out;
  bool deterministic = false;
  bool binary = false;
  int threads = 1;
};

void add_graph_options(CLI::App* cmd, GraphArgs& a) {
  cmd->add_option("--input", a.input, "Edge-list file (u v per line)")->required();
  cmd->add_flag("--undirected", a.undirected, "Treat each line as an undirected edge");
  cmd->add_flag("--raw-ids", a.raw_ids, "Use integer ids as given instead of remapping labels");
}

void add_run_options(CLI::App* cmd, RunArgs& a) {
  add_graph_options(cmd, a.graph);
  cmd->add_option("--k", a.cfg.k, "Embedding dimensionality (even)")->capture_default_str();
  cmd->add_option("--alpha", a.cfg.alpha, "Random-walk stopping probability")->capture_default_str();
  cmd->add_option("--ell1", a.cfg.ell1, "PPR iterations")->capture_default_str();
  cmd->add_option("--ell2", a.cfg.ell2, "Reweighting epochs")->capture_default_str();
  cmd->add_option("--eps", a.cfg.epsilon, "SVD error parameter")->capture_default_str();
  cmd->add_option("--lambda", a.cfg.lambda, "Weight regularization")->capture_default_str();
  cmd->add_option("--seed", a.cfg.seed, "Root random seed")->capture_default_str();
  cmd->add_flag("--deterministic", a.deterministic, "Bit-reproducible execution");
  cmd->add_flag("--binary", a.binary, "Binary embedding output (reserved)");
  cmd->add_option("--threads", a.threads, "Worker threads (reserved)")->capture_default_str();
}

void check_reserved(const RunArgs& a) {
  if (a.binary) throw std::invalid_argument("--binary is reserved and not implemented");
  if (a.threads != 1) throw std::invalid_argument("--threads: only 1 is supported");
}

Loaded load_graph(const GraphArgs& a) {
  std::ifstream in(a.input);
  if (!in) throw std::runtime_error("cannot open input file '" + a.input + "'");
  Loaded out;
  if (a.raw_ids) {
    out.graph = nrp::Graph::from_edges(nrp::parse_edge_list(in, !a.undirected));
  } else {
    auto labeled = nrp::parse_labeled_edge_list(in, !a.undirected);
    out.graph = nrp::Graph::from_edges(labeled.list);
    out.labels = std::move(labeled.labels);
  }
  return out;
}

std::string label_of(const Loaded& g, nrp::NodeId v) {
  return g.labels.empty() ? std::to_string(v) : g.labels[static_cast<std::size_t>(v)];
}

nrp::NodeId find_node(const Loaded& g, const std::string& label) {
  if (g.labels.empty()) {
    std::size_t pos = 0;
    long long id = -1;
    try {
      id = std::stoll(label, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != label.size() || id < 0 || id >= g.graph.n()) throw std::invalid_argument("unknown node '" + label + "'");
    return id;
  }
  auto it = std::find(g.labels.begin(), g.labels.end(), label);
  if (it == g.labels.end()) throw std::invalid_argument("unknown node '" + label + "'");
  return it - g.labels.begin();
}

nlohmann::ordered_json config_json(const nrp::NrpConfig& c) {
  return {{"k", c.k},           {"alpha", c.alpha},     {"ell1", c.ell1},    {"ell2", c.ell2},
          {"epsilon", c.epsilon}, {"lambda", c.lambda}, {"seed", c.seed}};
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + p.string() + "'");
}

void emit_report(const nrp::MetricReport& report, const std::string& out_path, const std::string& summary) {
  std::ostringstream tsv;
  nrp::write_metric_tsv(report, tsv);
  if (out_path.empty()) {
    std::cout << tsv.str();
  } else {
    write_file(out_path, tsv.str());
    std::cout << summary << '\n';
  }
}

int run_embed(const RunArgs& a) {
  check_reserved(a);
  nrp::validate(a.cfg);
  const auto total_start = Clock::now();
  nlohmann::ordered_json timings;

  auto t = Clock::now();
  Loaded g = load_graph(a.graph);
  timings["load"] = seconds_since(t);

  nrp::NrpHooks hooks;
  hooks.on_stage = [&](const std::string& stage, double s) { timings[stage] = s; };
  nrp::NrpResult res = nrp::nrp_embed_detailed(g.graph, a.cfg, hooks);

  t = Clock::now();
  std::filesystem::path dir(a.out);
  std::filesystem::create_directories(dir);
  std::ostringstream xs, ys;
  nrp::write_embedding_tsv(res.embedding.X, g.labels, xs);
  nrp::write_embedding_tsv(res.embedding.Y, g.labels, ys);
  write_file(dir / "X.tsv", xs.str());
  write_file(dir / "Y.tsv", ys.str());
  timings["write"] = seconds_since(t);

  nlohmann::ordered_json manifest;
  manifest["version"] = nrp::kVersion;
  manifest["command"] = "embed";
  manifest["input"] = a.graph.input;
  manifest["undirected"] = a.graph.undirected;
  manifest["nodes"] = g.graph.n();
  manifest["edges"] = g.graph.m();
  manifest["seed"] = a.cfg.seed;
  manifest["deterministic"] = a.deterministic;
  manifest["threads"] = a.threads;
  manifest["config"] = config_json(a.cfg);
  manifest["timings"] = timings;
  manifest["timings"]["total"] = seconds_since(total_start);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return 0;
}

int run_eval_link(const RunArgs& a, double ratio) {
  check_reserved(a);
  nrp::validate(a.cfg);
  Loaded g = load_graph(a.graph);
  nrp::LinkSplit split = nrp::split_edges(g.graph, ratio, a.cfg.seed);
  if (split.train.m() == 0) throw std::invalid_argument("train graph is empty after removing edges");
  if (split.test_pos.empty()) throw std::invalid_argument("no test edges; increase --remove-ratio");
  nrp::EmbeddingPair emb = nrp::nrp_embed(split.train, a.cfg);
  nrp::MetricReport report;
  report.auc = nrp::link_auc(emb, split);
  emit_report(report, a.out,
              "AUC " + nrp::format_value(*report.auc) + " over " + std::to_string(split.test_pos.size()) +
                  " positive and " + std::to_string(split.test_neg.size()) + " negative pairs");
  return 0;
}

int run_eval_reconstruct(const RunArgs& a, const std::vector<std::size_t>& ks) {
  check_reserved(a);
  nrp::validate(a.cfg);
  Loaded g = load_graph(a.graph);
  auto candidates = nrp::reconstruction_candidates(g.graph.n(), a.cfg.seed);
  nrp::EmbeddingPair emb = nrp::nrp_embed(g.graph, a.cfg);
  nrp::MetricReport report = nrp::precision_at_k(emb, g.graph, candidates, ks);
  std::string summary = "precision@K over " + std::to_string(candidates.size()) + " candidates:";
  for (const auto& [k, p] : report.precision_at_k) summary += " K=" + std::to_string(k) + ":" + nrp::format_value(p);
  emit_report(report, a.out, summary);
  return 0;
}

int run_ppr_exact(const GraphArgs& a, const std::string& source, double alpha, int L, const std::string& out) {
  Loaded g = load_graph(a);
  if (L < 0) L = nrp::default_truncation(alpha);
  nrp::NodeId s = find_node(g, source);
  nrp::Vector row = nrp::exact_ppr_row(g.graph, s, alpha, L);
  std::ostringstream tsv;
  for (nrp::NodeId v = 0; v < g.graph.n(); ++v)
    tsv << label_of(g, s) << '\t' << label_of(g, v) << '\t' << nrp::format_value(row[v]) << '\n';
  if (out.empty()) {
    std::cout << tsv.str();
  } else {
    write_file(out, tsv.str());
  }
  return 0;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network embedding via reweighted personalized PageRank factorization"};
  app.require_subcommand(1);

  RunArgs embed_args;
  auto* embed = app.add_subcommand("embed", "Compute forward/backward embeddings");
  add_run_options(embed, embed_args);
  embed->add_option("--out", embed_args.out, "Output directory")->required();

  RunArgs link_args;
  double ratio = 0.3;
  auto* link = app.add_subcommand("eval-link", "Link-prediction AUC after edge removal");
  add_run_options(link, link_args);
  link->add_option("--remove-ratio", ratio, "Fraction of edges held out")->capture_default_str();
  link->add_option("--out", link_args.out, "Metric TSV path (stdout if omitted)");

  RunArgs recon_args;
  std::vector<std::size_t> ks{10, 100, 1000};
  auto* recon = app.add_subcommand("eval-reconstruct", "Graph-reconstruction precision@K");
  add_run_options(recon, recon_args);
  recon->add_option("--ks", ks, "Comma-separated K values")->delimiter(',')->capture_default_str();
  recon->add_option("--out", recon_args.out, "Metric TSV path (stdout if omitted)");

  GraphArgs ppr_args;
  std::string source, ppr_out;
  double alpha = 0.15;
  int L = -1;
  auto* ppr = app.add_subcommand("ppr-exact", "Exact truncated PPR row of one source node");
  add_graph_options(ppr, ppr_args);
  ppr->add_option("--source", source, "Source node label")->required();
  ppr->add_option("--alpha", alpha, "Random-walk stopping probability")->capture_default_str();
  ppr->add_option("--L", L, "Truncation length (default: tail below 1e-12)");
  ppr->add_option("--out", ppr_out, "Output TSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*embed) return run_embed(embed_args);
    if (*link) return run_eval_link(link_args, ratio);
    if (*recon) return run_eval_reconstruct(recon_args, ks);
    if (*ppr) return run_ppr_exact(ppr_args, source, alpha, L, ppr_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << '\n';
    return 1;
  }
  return 1;
}
