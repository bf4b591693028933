#pragma once

#include "fsvd/metrics.hpp"
#include "fsvd/models.hpp"
#include "fsvd/sparse.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fsvd {

struct LinkPredictionResult {
  double roc_auc = 0.0;
  double train_seconds = 0.0;
  EmbeddingModel model;
};

// Embeds the symmetrized train graph and ranks test_pos against test_neg.
LinkPredictionResult run_link_prediction(const EdgeSplit& split, const WysConfig& cfg, const FsvdParams& params);

struct ClassificationData {
  CsrMatrix adjacency;         // n x n, already symmetrized as requested
  Matrix features;             // n x d
  std::vector<Index> truth;    // class per node, -1 when unknown
  std::vector<Index> train_ids;
  std::vector<Index> valid_ids;
  std::vector<Index> test_ids;
  Index classes = 0;
};

struct ClassificationOptions {
  // Feature augmentation: WYS embedding of the graph concatenated to X, then PCA.
  bool augment = true;
  WysConfig embed_cfg{1, 1.0, {}};
  Index embed_rank = 32;
  Index pca_dim = 1000;

  // Fixed depth, or tuned over [0, max_layers] on valid_ids when unset.
  std::optional<Index> layers;
  Index max_layers = 6;
  // Depth used when neither `layers` nor validation ids are available.
  Index fallback_layers = 2;

  // Classifier rank; clamped to what the labeled submatrix allows.
  FsvdParams params;
  LabeledSolve solve = LabeledSolve::kGatherThenDecompose;
};

struct ClassificationResult {
  double accuracy = 0.0;                  // on test_ids
  std::optional<double> valid_accuracy;   // on valid_ids when present
  double train_seconds = 0.0;
  Index layers = 0;
  Index rank = 0;
  std::vector<Index> predictions;
};

ClassificationResult run_classification(const ClassificationData& data, const ClassificationOptions& options);

// Random graph where each node draws avg_degree / 2 partners; symmetrized.
CsrMatrix synthetic_constant_degree_graph(Index n, double avg_degree, std::uint64_t seed);

struct BenchRow {
  Index n = 0;
  Index nnz = 0;
  double median_seconds = 0.0;
};

struct BenchOptions {
  std::vector<Index> sizes{10000, 20000, 40000};
  double avg_degree = 20.0;
  Index repeats = 5;
  WysConfig cfg{5, 1.0, {}};
  FsvdParams params;
};

// Median wall time of fsvd over the WYS operator for each graph size.
std::vector<BenchRow> bench_linear_time(const BenchOptions& options);

}  // namespace fsvd
