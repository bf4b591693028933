#include "fsvd/models.hpp"

#include "fsvd/errors.hpp"

#include <algorithm>
#include <string>

namespace fsvd {

EmbeddingModel train_wys_embedding(const CsrMatrix& adjacency, const WysConfig& cfg,
                                   const FsvdParams& params) {
  if (!adjacency.is_square()) throw InputError("adjacency matrix must be square");
  LinearOperator op = wys_operator(transition_matrix(adjacency), adjacency, cfg);
  SvdResult svd = fsvd(op, params);

  Vector root = svd.s.cwiseSqrt();
  EmbeddingModel model;
  model.left = svd.u * root.asDiagonal();
  model.right = svd.v * root.asDiagonal();
  model.singular_values = std::move(svd.s);
  return model;
}

Vector score_edges(const EmbeddingModel& model, const std::vector<Edge>& queries) {
  const Index n = model.nodes();
  Vector scores(static_cast<Index>(queries.size()));
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const Edge& q = queries[i];
    if (q.u < 0 || q.v < 0 || q.u >= n || q.v >= n) {
      throw InputError("query (" + std::to_string(q.u) + ", " + std::to_string(q.v) +
                       ") references a node outside [0, " + std::to_string(n) + ")");
    }
    scores[static_cast<Index>(i)] = model.left.row(q.u).dot(model.right.row(q.v));
  }
  return scores;
}

LabelMatrix LabelMatrix::from_assignments(Index n_nodes,
                                          const std::vector<std::pair<Index, Index>>& node_class,
                                          std::optional<Index> classes) {
  if (node_class.empty()) throw InputError("no labeled nodes");
  Index max_class = -1;
  for (const auto& [node, cls] : node_class) {
    if (node < 0 || node >= n_nodes) throw InputError("labeled node " + std::to_string(node) + " out of range");
    if (cls < 0) throw InputError("negative class id for node " + std::to_string(node));
    max_class = std::max(max_class, cls);
  }
  Index n_classes = classes.value_or(max_class + 1);
  if (n_classes < 2) throw InputError("need at least two classes");
  if (max_class >= n_classes) throw InputError("class id " + std::to_string(max_class) + " exceeds class count");

  LabelMatrix out;
  out.y = Matrix::Zero(n_nodes, n_classes);
  std::vector<char> seen(static_cast<std::size_t>(n_nodes), 0);
  for (const auto& [node, cls] : node_class) {
    if (seen[node]) throw InputError("node " + std::to_string(node) + " labeled twice");
    seen[node] = 1;
    out.y(node, cls) = 1.0;
    out.labeled.push_back(node);
  }
  std::sort(out.labeled.begin(), out.labeled.end());
  return out;
}

ClassifierModel train_jkn_classifier(const CsrMatrix& g, const Matrix& x, const LabelMatrix& labels,
                                     Index layers, const FsvdParams& params, LabeledSolve mode) {
  if (labels.labeled.empty()) throw InputError("labeled set is empty");
  if (labels.y.rows() != x.rows()) throw InputError("label matrix and features disagree on node count");

  Matrix y_labeled(static_cast<Index>(labels.labeled.size()), labels.classes());
  for (std::size_t i = 0; i < labels.labeled.size(); ++i) {
    y_labeled.row(static_cast<Index>(i)) = labels.y.row(labels.labeled[i]);
  }

  ClassifierModel model;
  model.layers = layers;
  if (mode == LabeledSolve::kGatherThenDecompose) {
    Matrix m_labeled = jkn_rows(g, x, layers, labels.labeled);
    SvdResult svd = fsvd(dense_op(std::move(m_labeled)), params);
    model.weights = pseudoinverse_apply(svd, y_labeled);
    return model;
  }

  SvdResult svd = fsvd(dense_op(jkn_materialize(g, x, layers)), params);
  SvdResult restricted = svd;
  restricted.u = Matrix(y_labeled.rows(), svd.k);
  for (std::size_t i = 0; i < labels.labeled.size(); ++i) {
    restricted.u.row(static_cast<Index>(i)) = svd.u.row(labels.labeled[i]);
  }
  model.weights = pseudoinverse_apply(restricted, y_labeled);
  return model;
}

Matrix class_scores(const ClassifierModel& model, const CsrMatrix& g, const Matrix& x) {
  const Index d = x.cols();
  if (!g.is_square() || g.rows() != x.rows()) throw InputError("graph and features disagree on node count");
  if (model.weights.rows() != (model.layers + 1) * d) {
    throw InputError("classifier expects " + std::to_string(model.weights.rows()) +
                     " propagated feature columns, features give " + std::to_string((model.layers + 1) * d));
  }
  Matrix scores = x * model.weights.topRows(d);
  RowMatrix block = x;
  for (Index layer = 1; layer <= model.layers; ++layer) {
    block = spmm(g, block);
    scores.noalias() += block * model.weights.middleRows(layer * d, d);
  }
  return scores;
}

std::vector<Index> argmax_rows(const Matrix& scores) {
  std::vector<Index> out(static_cast<std::size_t>(scores.rows()), 0);
  for (Index i = 0; i < scores.rows(); ++i) {
    Index best = 0;
    for (Index j = 1; j < scores.cols(); ++j) {
      if (scores(i, j) > scores(i, best)) best = j;
    }
    out[i] = best;
  }
  return out;
}

std::vector<Index> predict_labels(const ClassifierModel& model, const CsrMatrix& g, const Matrix& x) {
  return argmax_rows(class_scores(model, g, x));
}

Matrix pca_reduce(const Matrix& x, Index target_dim, const FsvdParams& params) {
  FsvdParams p = params;
  p.rank = target_dim;
  SvdResult svd = fsvd(centered_op(x), p);
  return svd.u * svd.s.asDiagonal();
}

Matrix augment_features(const Matrix& x, const EmbeddingModel& emb, Index target_dim,
                        const FsvdParams& params) {
  if (emb.nodes() != x.rows()) {
    throw InputError("features have " + std::to_string(x.rows()) + " rows, embedding has " +
                     std::to_string(emb.nodes()));
  }
  Matrix joined(x.rows(), x.cols() + emb.left.cols() + emb.right.cols());
  joined << x, emb.left, emb.right;
  Index dim = std::min({target_dim, joined.cols(), joined.rows()});
  return pca_reduce(joined, dim, params);
}

}  // namespace fsvd
