#include "fsvd/linops.hpp"

#include "fsvd/errors.hpp"

#include <string>
#include <utility>

namespace fsvd {

namespace {

std::string shape_str(Index r, Index c) { return std::to_string(r) + "x" + std::to_string(c); }

// sum_i c_i P^i V - lambda 1 (1^T V) + lambda Q V, where (P, Q) is (T, A) for
// the forward product and (T^T, A^T) for the transpose.
Matrix apply_wys(const CsrMatrix& power_base, const CsrMatrix& edge_term,
                 const std::vector<double>& weights, double neg_coef, const Matrix& v) {
  RowMatrix walk = v;
  RowMatrix acc = RowMatrix::Zero(v.rows(), v.cols());
  for (double weight : weights) {
    walk = spmm(power_base, walk);
    acc.noalias() += weight * walk;
  }
  if (neg_coef != 0.0) {
    RowMatrix edges = spmm(edge_term, RowMatrix(v));
    acc.noalias() += neg_coef * edges;
    Eigen::RowVectorXd col_sums = v.colwise().sum();
    acc.rowwise() -= neg_coef * col_sums;
  }
  return acc;
}

}  // namespace

LinearOperator::LinearOperator(Index rows, Index cols, Product product, Product transpose_product,
                               std::shared_ptr<const Matrix> explicit_matrix)
    : rows_(rows),
      cols_(cols),
      product_(std::make_shared<const Product>(std::move(product))),
      transpose_product_(std::make_shared<const Product>(std::move(transpose_product))),
      explicit_(std::move(explicit_matrix)) {
  if (rows_ < 0 || cols_ < 0) throw InputError("negative operator dimension");
}

Matrix LinearOperator::apply(const Matrix& x) const {
  if (x.rows() != cols_) {
    throw InputError("operator of shape " + shape_str(rows_, cols_) + " applied to block of shape " +
                     shape_str(x.rows(), x.cols()));
  }
  return (*product_)(x);
}

LinearOperator LinearOperator::transpose() const {
  LinearOperator t = *this;
  std::swap(t.rows_, t.cols_);
  std::swap(t.product_, t.transpose_product_);
  t.transposed_ = !transposed_;
  return t;
}

LinearOperator dense_op(std::shared_ptr<const Matrix> m) {
  if (!m) throw InputError("dense_op given a null matrix");
  auto product = [m](const Matrix& x) -> Matrix { return *m * x; };
  auto transpose_product = [m](const Matrix& x) -> Matrix { return m->transpose() * x; };
  return LinearOperator(m->rows(), m->cols(), product, transpose_product, m);
}

LinearOperator dense_op(Matrix m) { return dense_op(std::make_shared<const Matrix>(std::move(m))); }

LinearOperator sparse_op(CsrMatrix a) {
  auto forward = std::make_shared<const CsrMatrix>(std::move(a));
  auto backward = std::make_shared<const CsrMatrix>(forward->transpose());
  return LinearOperator(
      forward->rows(), forward->cols(), [forward](const Matrix& x) { return spmm(*forward, x); },
      [backward](const Matrix& x) { return spmm(*backward, x); });
}

std::vector<double> WysConfig::context_weights() const {
  if (window < 1) throw InputError("context window must be at least 1");
  if (!(neg_coef >= 0.0)) throw InputError("negative-sample coefficient must be >= 0");
  if (coeffs.empty()) {
    std::vector<double> staircase(static_cast<std::size_t>(window));
    for (Index i = 1; i <= window; ++i) staircase[i - 1] = static_cast<double>(window - i + 1);
    return staircase;
  }
  if (static_cast<Index>(coeffs.size()) != window) {
    throw InputError("expected " + std::to_string(window) + " context coefficients, got " +
                     std::to_string(coeffs.size()));
  }
  return coeffs;
}

LinearOperator wys_operator(const CsrMatrix& transition, const CsrMatrix& adjacency,
                            const WysConfig& cfg) {
  if (!transition.is_square() || !adjacency.is_square() || transition.rows() != adjacency.rows()) {
    throw InputError("wys_operator needs square T and A of equal size, got " +
                     shape_str(transition.rows(), transition.cols()) + " and " +
                     shape_str(adjacency.rows(), adjacency.cols()));
  }
  struct State {
    CsrMatrix t, t_transposed, a, a_transposed;
    std::vector<double> weights;
    double neg_coef;
  };
  auto state = std::make_shared<const State>(State{transition, transition.transpose(), adjacency,
                                                   adjacency.transpose(), cfg.context_weights(),
                                                   cfg.neg_coef});
  const Index n = transition.rows();
  return LinearOperator(
      n, n,
      [state](const Matrix& v) { return apply_wys(state->t, state->a, state->weights, state->neg_coef, v); },
      [state](const Matrix& v) {
        return apply_wys(state->t_transposed, state->a_transposed, state->weights, state->neg_coef, v);
      });
}

Matrix jkn_materialize(const CsrMatrix& g, const Matrix& x, Index layers) {
  if (!g.is_square() || g.rows() != x.rows()) {
    throw InputError("jkn_materialize needs square g matching X rows, got g " +
                     shape_str(g.rows(), g.cols()) + " and X " + shape_str(x.rows(), x.cols()));
  }
  if (layers < 0) throw InputError("layer count must be non-negative");
  const Index d = x.cols();
  Matrix out(x.rows(), (layers + 1) * d);
  out.leftCols(d) = x;
  RowMatrix block = x;
  for (Index layer = 1; layer <= layers; ++layer) {
    block = spmm(g, block);
    out.middleCols(layer * d, d) = block;
  }
  return out;
}

Matrix jkn_rows(const CsrMatrix& g, const Matrix& x, Index layers, const std::vector<Index>& row_ids) {
  if (!g.is_square() || g.rows() != x.rows()) {
    throw InputError("jkn_rows needs square g matching X rows, got g " + shape_str(g.rows(), g.cols()) +
                     " and X " + shape_str(x.rows(), x.cols()));
  }
  if (layers < 0) throw InputError("layer count must be non-negative");
  for (Index id : row_ids) {
    if (id < 0 || id >= x.rows()) throw InputError("row id " + std::to_string(id) + " out of range");
  }
  const Index d = x.cols();
  Matrix out(static_cast<Index>(row_ids.size()), (layers + 1) * d);
  RowMatrix block = x;
  for (Index layer = 0; layer <= layers; ++layer) {
    if (layer > 0) block = spmm(g, block);
    for (std::size_t r = 0; r < row_ids.size(); ++r) {
      out.block(static_cast<Index>(r), layer * d, 1, d) = block.row(row_ids[r]);
    }
  }
  return out;
}

LinearOperator centered_op(std::shared_ptr<const Matrix> x) {
  if (!x) throw InputError("centered_op given a null matrix");
  auto mean = std::make_shared<const Eigen::RowVectorXd>(
      x->rows() > 0 ? Eigen::RowVectorXd(x->colwise().mean()) : Eigen::RowVectorXd::Zero(x->cols()));
  auto product = [x, mean](const Matrix& v) -> Matrix {
    Matrix out = *x * v;
    Eigen::RowVectorXd shift = *mean * v;
    out.rowwise() -= shift;
    return out;
  };
  auto transpose_product = [x, mean](const Matrix& u) -> Matrix {
    Matrix out = x->transpose() * u;
    Eigen::RowVectorXd sums = u.colwise().sum();
    out.noalias() -= mean->transpose() * sums;
    return out;
  };
  return LinearOperator(x->rows(), x->cols(), product, transpose_product);
}

LinearOperator centered_op(Matrix x) { return centered_op(std::make_shared<const Matrix>(std::move(x))); }

}  // namespace fsvd
