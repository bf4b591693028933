#pragma once

#include "fsvd/types.hpp"

#include <utility>
#include <vector>

namespace fsvd {

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A list of directed node pairs over nodes [0, n_nodes).
struct EdgeList {
  std::vector<Edge> edges;
  Index n_nodes = 0;

  // Throws InputError when an id falls outside [0, n_nodes).
  void validate() const;
};

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Immutable compressed-sparse-row matrix of doubles.
///
/// Column indices within a row are strictly increasing. Every operation is
/// const and may be called concurrently on a shared instance.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  // Takes ownership of raw CSR arrays; throws InputError if they violate the
  // storage invariants.
  CsrMatrix(Index n_rows, Index n_cols, std::vector<Index> row_offsets,
            std::vector<Index> col_indices, std::vector<double> values);

  // Duplicate coordinates are summed.
  static CsrMatrix from_triplets(Index n_rows, Index n_cols, std::vector<Triplet> triplets);
  static CsrMatrix identity(Index n);
  static CsrMatrix from_dense(const Matrix& dense, double drop_below = 0.0);

  Index rows() const noexcept { return n_rows_; }
  Index cols() const noexcept { return n_cols_; }
  Index nnz() const noexcept { return static_cast<Index>(values_.size()); }

  const std::vector<Index>& row_offsets() const noexcept { return row_offsets_; }
  const std::vector<Index>& col_indices() const noexcept { return col_indices_; }
  const std::vector<double>& values() const noexcept { return values_; }

  // Entry lookup by binary search within the row; absent entries are 0.
  double coeff(Index row, Index col) const;

  bool is_square() const noexcept { return n_rows_ == n_cols_; }
  bool is_symmetric(double tol = 0.0) const;

  CsrMatrix transpose() const;
  Matrix to_dense() const;

 private:
  Index n_rows_ = 0;
  Index n_cols_ = 0;
  std::vector<Index> row_offsets_{0};
  std::vector<Index> col_indices_;
  std::vector<double> values_;
};

// Binary adjacency matrix with 1.0 at every listed (u, v), and at (v, u) too
// when symmetrize is set. Duplicates collapse to 1.0; self-loops are kept.
CsrMatrix csr_from_edges(const EdgeList& edges, bool symmetrize);

// Row sums of a square matrix.
Vector degree_vector(const CsrMatrix& a);

// D^-1 A. Rows of zero degree stay zero.
CsrMatrix transition_matrix(const CsrMatrix& a);

// (D + I)^-1/2 (A + I) (D + I)^-1/2, the GCN propagation matrix.
CsrMatrix renormalized_adjacency(const CsrMatrix& a);

// Exact sparse-times-dense product. Rows are distributed over
// thread_count() workers; each output entry is summed in a fixed order so the
// result does not depend on the thread count.
Matrix spmm(const CsrMatrix& a, const Matrix& b);
RowMatrix spmm(const CsrMatrix& a, const RowMatrix& b);

}  // namespace fsvd
