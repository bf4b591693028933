#include "fsvd/sparse.hpp"

#include "fsvd/errors.hpp"
#include "fsvd/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fsvd {

void EdgeList::validate() const {
  if (n_nodes < 0) throw InputError("negative node count");
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n_nodes || e.v >= n_nodes) {
      throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") references a node outside [0, " + std::to_string(n_nodes) + ")");
    }
  }
}

CsrMatrix::CsrMatrix(Index n_rows, Index n_cols, std::vector<Index> row_offsets,
                     std::vector<Index> col_indices, std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (n_rows_ < 0 || n_cols_ < 0) throw InputError("negative matrix dimension");
  if (row_offsets_.size() != static_cast<std::size_t>(n_rows_) + 1) {
    throw InputError("row_offsets must have n_rows + 1 entries");
  }
  if (col_indices_.size() != values_.size()) {
    throw InputError("col_indices and values differ in length");
  }
  if (row_offsets_.front() != 0 || row_offsets_.back() != nnz()) {
    throw InputError("row_offsets must start at 0 and end at nnz");
  }
  for (Index i = 0; i < n_rows_; ++i) {
    Index begin = row_offsets_[i];
    Index end = row_offsets_[i + 1];
    if (end < begin) throw InputError("row_offsets must be non-decreasing");
    for (Index p = begin; p < end; ++p) {
      Index c = col_indices_[p];
      if (c < 0 || c >= n_cols_) throw InputError("column index out of range");
      if (p > begin && col_indices_[p - 1] >= c) {
        throw InputError("column indices must be strictly increasing within a row");
      }
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(Index n_rows, Index n_cols, std::vector<Triplet> triplets) {
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols) {
      throw InputError("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                       ") outside a " + std::to_string(n_rows) + "x" + std::to_string(n_cols) +
                       " matrix");
    }
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  std::vector<Index> offsets(static_cast<std::size_t>(n_rows) + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  cols.reserve(triplets.size());
  vals.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const Triplet& t = triplets[i];
    if (i > 0 && triplets[i - 1].row == t.row && triplets[i - 1].col == t.col) {
      vals.back() += t.value;
      continue;
    }
    cols.push_back(t.col);
    vals.push_back(t.value);
    ++offsets[t.row + 1];
  }
  for (Index i = 0; i < n_rows; ++i) offsets[i + 1] += offsets[i];
  return CsrMatrix(n_rows, n_cols, std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix CsrMatrix::identity(Index n) {
  std::vector<Index> offsets(static_cast<std::size_t>(n) + 1);
  std::vector<Index> cols(static_cast<std::size_t>(n));
  for (Index i = 0; i <= n; ++i) offsets[i] = i;
  for (Index i = 0; i < n; ++i) cols[i] = i;
  return CsrMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0));
}

CsrMatrix CsrMatrix::from_dense(const Matrix& dense, double drop_below) {
  std::vector<Triplet> triplets;
  for (Index i = 0; i < dense.rows(); ++i) {
    for (Index j = 0; j < dense.cols(); ++j) {
      double v = dense(i, j);
      if (v != 0.0 && std::abs(v) >= drop_below) triplets.push_back({i, j, v});
    }
  }
  return from_triplets(dense.rows(), dense.cols(), std::move(triplets));
}

double CsrMatrix::coeff(Index row, Index col) const {
  auto begin = col_indices_.begin() + row_offsets_[row];
  auto end = col_indices_.begin() + row_offsets_[row + 1];
  auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

bool CsrMatrix::is_symmetric(double tol) const {
  if (!is_square()) return false;
  for (Index i = 0; i < n_rows_; ++i) {
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      if (std::abs(values_[p] - coeff(col_indices_[p], i)) > tol) return false;
    }
  }
  return true;
}

CsrMatrix CsrMatrix::transpose() const {
  std::vector<Index> offsets(static_cast<std::size_t>(n_cols_) + 1, 0);
  for (Index c : col_indices_) ++offsets[c + 1];
  for (Index j = 0; j < n_cols_; ++j) offsets[j + 1] += offsets[j];

  std::vector<Index> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<Index> cols(col_indices_.size());
  std::vector<double> vals(values_.size());
  // Rows are visited in increasing order, so each transposed row comes out sorted.
  for (Index i = 0; i < n_rows_; ++i) {
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      Index dst = cursor[col_indices_[p]]++;
      cols[dst] = i;
      vals[dst] = values_[p];
    }
  }
  return CsrMatrix(n_cols_, n_rows_, std::move(offsets), std::move(cols), std::move(vals));
}

Matrix CsrMatrix::to_dense() const {
  Matrix dense = Matrix::Zero(n_rows_, n_cols_);
  for (Index i = 0; i < n_rows_; ++i) {
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      dense(i, col_indices_[p]) = values_[p];
    }
  }
  return dense;
}

CsrMatrix csr_from_edges(const EdgeList& edges, bool symmetrize) {
  edges.validate();
  std::vector<Triplet> triplets;
  triplets.reserve(edges.edges.size() * (symmetrize ? 2 : 1));
  for (const Edge& e : edges.edges) {
    triplets.push_back({e.u, e.v, 1.0});
    if (symmetrize && e.u != e.v) triplets.push_back({e.v, e.u, 1.0});
  }
  CsrMatrix summed = CsrMatrix::from_triplets(edges.n_nodes, edges.n_nodes, std::move(triplets));
  std::vector<double> ones(static_cast<std::size_t>(summed.nnz()), 1.0);
  return CsrMatrix(summed.rows(), summed.cols(), summed.row_offsets(), summed.col_indices(),
                   std::move(ones));
}

Vector degree_vector(const CsrMatrix& a) {
  if (!a.is_square()) throw InputError("degree_vector needs a square matrix");
  Vector degree = Vector::Zero(a.rows());
  const auto& offsets = a.row_offsets();
  const auto& values = a.values();
  for (Index i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (Index p = offsets[i]; p < offsets[i + 1]; ++p) sum += values[p];
    degree[i] = sum;
  }
  return degree;
}

CsrMatrix transition_matrix(const CsrMatrix& a) {
  Vector degree = degree_vector(a);
  std::vector<double> values = a.values();
  const auto& offsets = a.row_offsets();
  for (Index i = 0; i < a.rows(); ++i) {
    double inv = degree[i] != 0.0 ? 1.0 / degree[i] : 0.0;
    for (Index p = offsets[i]; p < offsets[i + 1]; ++p) values[p] *= inv;
  }
  return CsrMatrix(a.rows(), a.cols(), a.row_offsets(), a.col_indices(), std::move(values));
}

CsrMatrix renormalized_adjacency(const CsrMatrix& a) {
  Vector degree = degree_vector(a);
  Vector inv_sqrt = (degree.array() + 1.0).rsqrt();

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(a.nnz() + a.rows()));
  const auto& offsets = a.row_offsets();
  const auto& cols = a.col_indices();
  const auto& values = a.values();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index p = offsets[i]; p < offsets[i + 1]; ++p) triplets.push_back({i, cols[p], values[p]});
    triplets.push_back({i, i, 1.0});
  }
  CsrMatrix shifted = CsrMatrix::from_triplets(a.rows(), a.cols(), std::move(triplets));

  std::vector<double> scaled = shifted.values();
  const auto& s_offsets = shifted.row_offsets();
  const auto& s_cols = shifted.col_indices();
  for (Index i = 0; i < shifted.rows(); ++i) {
    for (Index p = s_offsets[i]; p < s_offsets[i + 1]; ++p) {
      scaled[p] *= inv_sqrt[i] * inv_sqrt[s_cols[p]];
    }
  }
  return CsrMatrix(shifted.rows(), shifted.cols(), shifted.row_offsets(), shifted.col_indices(),
                   std::move(scaled));
}

RowMatrix spmm(const CsrMatrix& a, const RowMatrix& b) {
  if (a.cols() != b.rows()) {
    throw InputError("spmm shape mismatch: " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " times " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
  RowMatrix out(a.rows(), b.cols());
  const Index* offsets = a.row_offsets().data();
  const Index* cols = a.col_indices().data();
  const double* values = a.values().data();
  const Index n_rows = a.rows();

#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Index i = 0; i < n_rows; ++i) {
    auto row = out.row(i);
    row.setZero();
    for (Index p = offsets[i]; p < offsets[i + 1]; ++p) row.noalias() += values[p] * b.row(cols[p]);
  }
  return out;
}

Matrix spmm(const CsrMatrix& a, const Matrix& b) {
  RowMatrix row_major = b;
  return spmm(a, row_major);
}

}  // namespace fsvd
