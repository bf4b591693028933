#include "fsvd/cli.hpp"

#include "fsvd/errors.hpp"
#include "fsvd/io.hpp"
#include "fsvd/pipeline.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fsvd::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string fmt(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

void require(const std::string& value, const char* flag, const std::string& command) {
  if (value.empty()) throw InputError(command + " requires " + flag);
}

fs::path artifact(const RunConfig& config, const std::string& suffix) {
  return fs::path((config.out.empty() ? std::string("fsvd") : config.out) + suffix);
}

WysConfig wys_config(const RunConfig& config, const std::string& command) {
  WysConfig cfg;
  cfg.window = config.window.value_or(default_window(command));
  cfg.neg_coef = config.neg_coef;
  return cfg;
}

std::pair<Index, Index> parse_range(const std::string& text) {
  auto sep = text.find("..");
  if (sep == std::string::npos) throw InputError("range must look like lo..hi, got '" + text + "'");
  try {
    Index lo = std::stoll(text.substr(0, sep));
    Index hi = std::stoll(text.substr(sep + 2));
    if (hi < lo) throw InputError("empty range '" + text + "'");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InputError("range must look like lo..hi, got '" + text + "'");
  }
}

EdgeSplit load_or_make_split(const RunConfig& config) {
  if (!config.split_dir.empty()) return io::load_split(config.split_dir);
  require(config.edges, "--edges or --split-dir", "linkpred");
  EdgeList edges = io::load_edge_list(config.edges, config.n_nodes);
  EdgeSplit split = split_edges(csr_from_edges(edges, true), config.test_fraction, config.params.seed);
  if (!config.out.empty()) io::write_split(config.out + ".split", split);
  return split;
}

ClassificationData load_classification(const RunConfig& config) {
  require(config.edges, "--edges", "classify");
  require(config.features, "--features", "classify");
  require(config.labels, "--labels", "classify");
  require(config.train_ids, "--train-ids", "classify");
  require(config.test_ids, "--test-ids", "classify");

  ClassificationData data;
  data.features = io::load_dense_tsv(config.features);
  const Index n = data.features.rows();
  data.adjacency = csr_from_edges(io::load_edge_list(config.edges, config.n_nodes.value_or(n)), config.symmetrize);
  data.truth.assign(static_cast<std::size_t>(n), -1);
  for (const auto& [node, cls] : io::load_labels(config.labels)) {
    if (node < 0 || node >= n) throw InputError("label for node " + std::to_string(node) + " outside feature rows");
    if (cls < 0) throw InputError("negative class id for node " + std::to_string(node));
    data.truth[node] = cls;
    data.classes = std::max(data.classes, cls + 1);
  }
  data.train_ids = io::load_ids(config.train_ids);
  data.test_ids = io::load_ids(config.test_ids);
  if (!config.valid_ids.empty()) data.valid_ids = io::load_ids(config.valid_ids);
  return data;
}

ClassificationOptions classification_options(const RunConfig& config) {
  ClassificationOptions options;
  options.augment = config.augment;
  options.embed_cfg = wys_config(config, "classify");
  options.embed_rank = config.embed_rank;
  options.pca_dim = config.pca_dim;
  options.layers = config.layers;
  options.max_layers = config.max_layers;
  options.params = config.params;
  options.solve = config.solve;
  return options;
}

// ||A - U S V^T||_F from ||A||^2 - 2 tr(S U^T A V) + ||s||^2, using orthonormal U and V.
double sparse_reconstruction_error(const CsrMatrix& a, const SvdResult& svd) {
  double norm2 = 0.0;
  for (double v : a.values()) norm2 += v * v;
  Matrix av = spmm(a, svd.v);
  double cross = 0.0;
  for (Index j = 0; j < svd.k; ++j) cross += svd.s[j] * svd.u.col(j).dot(av.col(j));
  return std::sqrt(std::max(0.0, norm2 - 2.0 * cross + svd.s.squaredNorm()));
}

int run_svd(const RunConfig& config, std::ostream& out) {
  require(config.matrix, "--matrix", "svd");
  CsrMatrix m = io::load_matrix_market(config.matrix);
  auto start = Clock::now();
  LinearOperator op = sparse_op(m);
  SvdResult svd = fsvd(op, config.params);
  double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  ReconstructionError err{sparse_reconstruction_error(m, svd), ErrorMethod::kExact};

  io::write_dense_tsv(artifact(config, ".U.tsv"), svd.u);
  io::write_vector_tsv(artifact(config, ".s.tsv"), svd.s);
  io::write_dense_tsv(artifact(config, ".V.tsv"), svd.v);
  out << "rank=" << svd.k << '\n'
      << "iterations_used=" << svd.iterations_used << '\n'
      << "reconstruction_error=" << fmt(err.value) << '\n'
      << "error_method=" << to_string(err.method) << '\n'
      << "train_seconds=" << fmt(seconds) << '\n';
  return kOk;
}

int run_embed(const RunConfig& config, std::ostream& out) {
  require(config.edges, "--edges", "embed");
  CsrMatrix a = csr_from_edges(io::load_edge_list(config.edges, config.n_nodes), config.symmetrize);
  auto start = Clock::now();
  EmbeddingModel model = train_wys_embedding(a, wys_config(config, "embed"), config.params);
  double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  io::write_embedding_tsv(artifact(config, ".embedding.tsv"), model);
  out << "nodes=" << model.nodes() << '\n'
      << "dimension=" << 2 * model.rank() << '\n'
      << "train_seconds=" << fmt(seconds) << '\n';
  return kOk;
}

int run_linkpred(const RunConfig& config, std::ostream& out) {
  EdgeSplit split = load_or_make_split(config);
  LinkPredictionResult result = run_link_prediction(split, wys_config(config, "linkpred"), config.params);
  if (!config.out.empty()) io::write_embedding_tsv(artifact(config, ".embedding.tsv"), result.model);
  out << "roc_auc=" << fmt(result.roc_auc) << '\n' << "train_seconds=" << fmt(result.train_seconds) << '\n';
  return kOk;
}

int run_classify(const RunConfig& config, std::ostream& out) {
  ClassificationData data = load_classification(config);
  ClassificationResult result = run_classification(data, classification_options(config));
  if (!config.out.empty()) io::write_predictions_tsv(artifact(config, ".predictions.tsv"), result.predictions);
  out << "accuracy=" << fmt(result.accuracy) << '\n';
  if (result.valid_accuracy) out << "valid_accuracy=" << fmt(*result.valid_accuracy) << '\n';
  out << "layers=" << result.layers << '\n'
      << "rank=" << result.rank << '\n'
      << "train_seconds=" << fmt(result.train_seconds) << '\n';
  return kOk;
}

int run_sweep(const RunConfig& config, std::ostream& out) {
  auto [lo, hi] = parse_range(config.sweep_range);
  std::ostringstream csv;
  if (config.sweep_param == "L") {
    if (lo < 0) throw InputError("layer range must be non-negative");
    ClassificationData data = load_classification(config);
    ClassificationOptions options = classification_options(config);
    csv << "L,accuracy,train_seconds\n";
    for (Index layers = lo; layers <= hi; ++layers) {
      options.layers = layers;
      ClassificationResult result = run_classification(data, options);
      csv << layers << ',' << fmt(result.accuracy) << ',' << fmt(result.train_seconds) << '\n';
    }
  } else if (config.sweep_param == "k") {
    if (lo < 1) throw InputError("rank range must start at 1 or above");
    EdgeSplit split = load_or_make_split(config);
    csv << "k,roc_auc,train_seconds\n";
    for (Index k = lo; k <= hi; ++k) {
      FsvdParams params = config.params;
      params.rank = k;
      LinkPredictionResult result = run_link_prediction(split, wys_config(config, "linkpred"), params);
      csv << k << ',' << fmt(result.roc_auc) << ',' << fmt(result.train_seconds) << '\n';
    }
  } else {
    throw InputError("--param must be L or k");
  }
  out << csv.str();
  if (!config.out.empty()) {
    std::ofstream file(artifact(config, ".sweep.csv"));
    file << csv.str();
  }
  return kOk;
}

int run_bench(const RunConfig& config, std::ostream& out) {
  BenchOptions options;
  options.sizes = config.bench_sizes;
  options.avg_degree = config.bench_degree;
  options.repeats = config.bench_repeats;
  options.cfg = wys_config(config, "bench");
  options.params = config.params;
  std::ostringstream csv;
  csv << "n,nnz,median_seconds\n";
  for (const BenchRow& row : bench_linear_time(options)) {
    csv << row.n << ',' << row.nnz << ',' << fmt(row.median_seconds) << '\n';
  }
  out << csv.str();
  if (!config.out.empty()) {
    std::ofstream file(artifact(config, ".bench.csv"));
    file << csv.str();
  }
  return kOk;
}

}  // namespace

Index default_window(const std::string& command) { return command == "classify" ? 1 : 5; }

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "svd") return run_svd(config, out);
    if (config.command == "embed") return run_embed(config, out);
    if (config.command == "linkpred") return run_linkpred(config, out);
    if (config.command == "classify") return run_classify(config, out);
    if (config.command == "sweep") return run_sweep(config, out);
    if (config.command == "bench") return run_bench(config, out);
    err << "unknown command '" << config.command << "'\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-free truncated SVD and closed-form graph models"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::uint64_t seed = 0;
  Index rank = 32;
  Index iterations = 10;
  Index n_nodes = 0;
  bool no_symmetrize = false;
  bool no_augment = false;
  std::string solve = "gather";

  app.add_option("--matrix", config.matrix, "Matrix Market input (svd)");
  app.add_option("--edges", config.edges, "edge list file");
  app.add_option("--features", config.features, "dense feature TSV");
  app.add_option("--labels", config.labels, "`node_id class_id` TSV");
  app.add_option("--train-ids", config.train_ids, "labeled node ids");
  app.add_option("--valid-ids", config.valid_ids, "validation node ids (tunes --layers when unset)");
  app.add_option("--test-ids", config.test_ids, "evaluation node ids");
  app.add_option("--split-dir", config.split_dir, "directory with index.tsv and edge splits");
  app.add_option("--nodes", n_nodes, "node count override");
  app.add_flag("--no-symmetrize", no_symmetrize, "keep edges directed");
  app.add_option("--rank", rank, "SVD rank k")->check(CLI::PositiveNumber);
  app.add_option("--iterations", iterations, "power iterations")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "random seed");
  app.add_option("--window", config.window, "context window C")->check(CLI::PositiveNumber);
  app.add_option("--neg-coef", config.neg_coef, "negative-sample coefficient lambda")->check(CLI::NonNegativeNumber);
  app.add_option("--layers", config.layers, "message-passing depth L")->check(CLI::NonNegativeNumber);
  app.add_option("--max-layers", config.max_layers, "largest depth tried when tuning")->check(CLI::NonNegativeNumber);
  app.add_option("--pca-dim", config.pca_dim, "PCA width after feature augmentation")->check(CLI::PositiveNumber);
  app.add_option("--embed-rank", config.embed_rank, "embedding rank used for feature augmentation")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-augment", no_augment, "skip embedding augmentation and PCA");
  app.add_option("--solve", solve, "labeled-row handling: gather or decompose")
      ->check(CLI::IsMember({"gather", "decompose"}));
  app.add_option("--test-fraction", config.test_fraction, "held-out edge fraction when splitting");
  app.add_option("--param", config.sweep_param, "sweep parameter: L or k")->check(CLI::IsMember({"L", "k"}));
  app.add_option("--range", config.sweep_range, "sweep range lo..hi");
  app.add_option("--sizes", config.bench_sizes, "bench graph sizes")->delimiter(',');
  app.add_option("--degree", config.bench_degree, "bench average degree")->check(CLI::PositiveNumber);
  app.add_option("--repeats", config.bench_repeats, "bench repeats per size")->check(CLI::PositiveNumber);
  app.add_option("--out", config.out, "output prefix");

  for (const char* name : {"svd", "embed", "linkpred", "classify", "sweep", "bench"}) {
    app.add_subcommand(name, std::string("run ") + name)->callback([&config, name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  config.params.seed = seed;
  config.params.rank = rank;
  config.params.iterations = iterations;
  if (n_nodes > 0) config.n_nodes = n_nodes;
  config.symmetrize = !no_symmetrize;
  config.augment = !no_augment;
  config.solve = solve == "decompose" ? LabeledSolve::kDecomposeThenGather : LabeledSolve::kGatherThenDecompose;
  return run(config, out, err);
}

}  // namespace fsvd::cli
