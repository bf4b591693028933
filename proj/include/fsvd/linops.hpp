#pragma once

#include "fsvd/sparse.hpp"
#include "fsvd/types.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace fsvd {

/// An implicit r x c matrix known only through its products.
///
/// `apply` maps a dense c x b block to the r x b block M * X, and
/// `transpose()` returns the operator for M^T (whose `apply` maps r x b to
/// c x b). Operators are cheap to copy: they share their captured data, which
/// is immutable, so concurrent `apply` calls are safe.
class LinearOperator {
 public:
  using Product = std::function<Matrix(const Matrix&)>;

  LinearOperator(Index rows, Index cols, Product product, Product transpose_product,
                 std::shared_ptr<const Matrix> explicit_matrix = nullptr);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }

  // Throws InputError if x.rows() != cols().
  Matrix apply(const Matrix& x) const;
  LinearOperator transpose() const;

  // Set only for operators that wrap a materialized matrix (dense_op).
  // For a transposed dense operator this is the untransposed matrix;
  // check is_transposed() before using it.
  const Matrix* explicit_matrix() const noexcept { return explicit_.get(); }
  bool is_transposed() const noexcept { return transposed_; }

 private:
  Index rows_;
  Index cols_;
  std::shared_ptr<const Product> product_;
  std::shared_ptr<const Product> transpose_product_;
  std::shared_ptr<const Matrix> explicit_;
  bool transposed_ = false;
};

LinearOperator dense_op(Matrix m);
LinearOperator dense_op(std::shared_ptr<const Matrix> m);

// Wraps a sparse matrix; the transpose is built once up front.
LinearOperator sparse_op(CsrMatrix a);

// Context weights and negative-sample coefficient of the random-walk
// co-visitation matrix sum_i c_i T^i - lambda (J - A).
struct WysConfig {
  Index window = 5;
  double neg_coef = 1.0;
  // Empty means the staircase c_i = window - i + 1.
  std::vector<double> coeffs;

  // Resolved weights, length `window`. Throws InputError on an invalid config.
  std::vector<double> context_weights() const;
};

/// Matrix-free random-walk co-visitation operator.
///
/// Applies sum_{i=1..C} c_i T^i V - lambda 1 (1^T V) + lambda A V with one
/// sparse multiply per context step, reusing the running power T^i V. The
/// n x n matrix is never formed. The transpose uses T^T and A^T, both built
/// once at construction.
LinearOperator wys_operator(const CsrMatrix& transition, const CsrMatrix& adjacency,
                            const WysConfig& cfg);

// [X | gX | g^2 X | ... | g^L X], n x (L + 1) d, computed with L sparse multiplies.
Matrix jkn_materialize(const CsrMatrix& g, const Matrix& x, Index layers);

// Rows `row_ids` of jkn_materialize(g, x, layers) without holding the full
// n x (L + 1) d matrix.
Matrix jkn_rows(const CsrMatrix& g, const Matrix& x, Index layers, const std::vector<Index>& row_ids);

// Column-centered view of X: apply(V) = X V - 1 (mu^T V) where mu holds the
// column means. X is shared, not copied.
LinearOperator centered_op(std::shared_ptr<const Matrix> x);
LinearOperator centered_op(Matrix x);

}  // namespace fsvd
