#include "fsvd/pipeline.hpp"

#include "fsvd/errors.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <string>

namespace fsvd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_ids(const std::vector<Index>& ids, Index n, const char* what) {
  for (Index id : ids) {
    if (id < 0 || id >= n) throw InputError(std::string(what) + " id " + std::to_string(id) + " out of range");
  }
}

struct FittedClassifier {
  ClassifierModel model;
  Index rank = 0;
};

FittedClassifier fit(const CsrMatrix& g, const Matrix& x, const LabelMatrix& labels, Index layers,
                     const ClassificationOptions& options) {
  FsvdParams params = options.params;
  const Index width = (layers + 1) * x.cols();
  params.rank = std::min({params.rank, static_cast<Index>(labels.labeled.size()), width});
  return {train_jkn_classifier(g, x, labels, layers, params, options.solve), params.rank};
}

}  // namespace

LinkPredictionResult run_link_prediction(const EdgeSplit& split, const WysConfig& cfg, const FsvdParams& params) {
  LinkPredictionResult result;
  auto start = Clock::now();
  CsrMatrix adjacency = csr_from_edges(split.train, true);
  result.model = train_wys_embedding(adjacency, cfg, params);
  result.train_seconds = seconds_since(start);

  std::vector<Edge> queries = split.test_pos.edges;
  queries.insert(queries.end(), split.test_neg.edges.begin(), split.test_neg.edges.end());
  Vector scores = score_edges(result.model, queries);
  std::vector<int> labels(queries.size(), 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(split.test_pos.edges.size()), 1);
  result.roc_auc = roc_auc(std::vector<double>(scores.data(), scores.data() + scores.size()), labels);
  return result;
}

ClassificationResult run_classification(const ClassificationData& data, const ClassificationOptions& options) {
  const Index n = data.features.rows();
  if (data.adjacency.rows() != n || !data.adjacency.is_square()) {
    throw InputError("graph has " + std::to_string(data.adjacency.rows()) + " nodes but features have " +
                     std::to_string(n) + " rows");
  }
  if (static_cast<Index>(data.truth.size()) != n) throw InputError("truth vector must cover every node");
  check_ids(data.train_ids, n, "train");
  check_ids(data.valid_ids, n, "validation");
  check_ids(data.test_ids, n, "test");
  if (data.test_ids.empty()) throw InputError("no test ids");

  std::vector<std::pair<Index, Index>> assignments;
  for (Index id : data.train_ids) {
    if (data.truth[id] < 0) throw InputError("train node " + std::to_string(id) + " has no label");
    assignments.emplace_back(id, data.truth[id]);
  }
  LabelMatrix labels = LabelMatrix::from_assignments(n, assignments, data.classes);

  ClassificationResult result;
  auto start = Clock::now();

  Matrix x = data.features;
  if (options.augment) {
    FsvdParams embed_params = options.params;
    embed_params.rank = std::min(options.embed_rank, n);
    EmbeddingModel emb = train_wys_embedding(data.adjacency, options.embed_cfg, embed_params);
    FsvdParams pca_params = options.params;
    pca_params.seed = options.params.seed + 1;
    x = augment_features(x, emb, options.pca_dim, pca_params);
  }
  CsrMatrix g = renormalized_adjacency(data.adjacency);

  Index layers = options.fallback_layers;
  if (options.layers) {
    layers = *options.layers;
  } else if (!data.valid_ids.empty()) {
    double best = -1.0;
    for (Index candidate = 0; candidate <= options.max_layers; ++candidate) {
      FittedClassifier fitted = fit(g, x, labels, candidate, options);
      double acc = accuracy(predict_labels(fitted.model, g, x), data.truth, data.valid_ids);
      if (acc > best) {
        best = acc;
        layers = candidate;
      }
    }
  }
  FittedClassifier fitted = fit(g, x, labels, layers, options);
  result.train_seconds = seconds_since(start);

  result.layers = layers;
  result.rank = fitted.rank;
  result.predictions = predict_labels(fitted.model, g, x);
  result.accuracy = accuracy(result.predictions, data.truth, data.test_ids);
  if (!data.valid_ids.empty()) result.valid_accuracy = accuracy(result.predictions, data.truth, data.valid_ids);
  return result;
}

CsrMatrix synthetic_constant_degree_graph(Index n, double avg_degree, std::uint64_t seed) {
  if (n < 2) throw InputError("synthetic graph needs at least two nodes");
  const auto per_node = static_cast<Index>(std::max(1.0, avg_degree / 2.0));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, n - 2);
  EdgeList edges;
  edges.n_nodes = n;
  edges.edges.reserve(static_cast<std::size_t>(n * per_node));
  for (Index u = 0; u < n; ++u) {
    for (Index j = 0; j < per_node; ++j) {
      Index v = pick(rng);
      if (v >= u) ++v;
      edges.edges.push_back({u, v});
    }
  }
  return csr_from_edges(edges, true);
}

std::vector<BenchRow> bench_linear_time(const BenchOptions& options) {
  if (options.repeats < 1) throw InputError("bench needs at least one repeat");
  std::vector<BenchRow> rows;
  for (Index n : options.sizes) {
    CsrMatrix a = synthetic_constant_degree_graph(n, options.avg_degree, options.params.seed + static_cast<std::uint64_t>(n));
    std::vector<double> times;
    for (Index rep = 0; rep < options.repeats; ++rep) {
      auto start = Clock::now();
      LinearOperator op = wys_operator(transition_matrix(a), a, options.cfg);
      SvdResult svd = fsvd(op, options.params);
      times.push_back(seconds_since(start));
      if (svd.k != options.params.rank) throw NumericError("bench factorization returned the wrong rank");
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    double median = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
    rows.push_back({n, a.nnz(), median});
  }
  return rows;
}

}  // namespace fsvd
