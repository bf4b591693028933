#pragma once

#include "fsvd/linops.hpp"
#include "fsvd/sparse.hpp"
#include "fsvd/svd.hpp"
#include "fsvd/types.hpp"

#include <optional>
#include <vector>

namespace fsvd {

// Node embedding for edge scoring: score(u, v) = <left[u], right[v]>.
// left = U diag(sqrt(s)) and right = V diag(sqrt(s)), so left * right^T is
// the rank-k factorization of the co-visitation matrix.
struct EmbeddingModel {
  Matrix left;
  Matrix right;
  Vector singular_values;

  Index nodes() const noexcept { return left.rows(); }
  Index rank() const noexcept { return left.cols(); }
};

EmbeddingModel train_wys_embedding(const CsrMatrix& adjacency, const WysConfig& cfg,
                                   const FsvdParams& params);

// Throws InputError for an id outside [0, n).
Vector score_edges(const EmbeddingModel& model, const std::vector<Edge>& queries);

// One-hot targets restricted to the labeled rows.
struct LabelMatrix {
  Matrix y;                     // n x classes; unlabeled rows are zero
  std::vector<Index> labeled;   // sorted, unique

  Index classes() const noexcept { return y.cols(); }

  // classes = 1 + max class id unless given. Throws InputError on a bad
  // id, a duplicate node, fewer than two classes, or an empty set.
  static LabelMatrix from_assignments(Index n_nodes, const std::vector<std::pair<Index, Index>>& node_class,
                                      std::optional<Index> classes = std::nullopt);
};

struct ClassifierModel {
  Matrix weights;  // (layers + 1) d x classes
  Index layers = 0;
  std::optional<Index> pca_dim;

  Index classes() const noexcept { return weights.cols(); }
};

enum class LabeledSolve {
  // Decompose the labeled rows of the propagated feature matrix.
  kGatherThenDecompose,
  // Decompose all rows, then restrict U^T Y to the labeled rows.
  kDecomposeThenGather,
};

/// Closed-form linear message-passing classifier.
///
/// Builds [X | gX | ... | g^L X], decomposes it with rank params.rank and
/// returns W = pinv(M) Y over the labeled nodes. Throws InputError for an empty
/// labeled set or a rank larger than the decomposed matrix allows.
ClassifierModel train_jkn_classifier(const CsrMatrix& g, const Matrix& x, const LabelMatrix& labels,
                                     Index layers, const FsvdParams& params,
                                     LabeledSolve mode = LabeledSolve::kGatherThenDecompose);

// Class scores M W for every node.
Matrix class_scores(const ClassifierModel& model, const CsrMatrix& g, const Matrix& x);

// Row-wise argmax of class_scores; ties go to the lowest class id.
std::vector<Index> predict_labels(const ClassifierModel& model, const CsrMatrix& g, const Matrix& x);

// Row-wise argmax, lowest column on ties.
std::vector<Index> argmax_rows(const Matrix& scores);

// Principal-component scores U diag(s) of the column-centered X.
Matrix pca_reduce(const Matrix& x, Index target_dim, const FsvdParams& params);

// PCA of [X | left | right] to min(target_dim, width, rows) columns.
Matrix augment_features(const Matrix& x, const EmbeddingModel& emb, Index target_dim,
                        const FsvdParams& params);

}  // namespace fsvd
