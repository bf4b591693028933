#pragma once

// Test-only reference computations. Everything here works on explicit dense
// matrices and avoids the library's factorization paths.

#include "fsvd/linops.hpp"
#include "fsvd/sparse.hpp"
#include "fsvd/svd.hpp"

#include <Eigen/SVD>

#include <cstdint>
#include <random>
#include <vector>

namespace fsvd::testing {

inline Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

// Orthonormal columns via classical Gram-Schmidt run twice.
inline Matrix random_orthonormal(Index rows, Index cols, std::mt19937_64& rng) {
  Matrix q = gaussian_matrix(rows, cols, rng);
  for (int pass = 0; pass < 2; ++pass) {
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
      q.col(j).normalize();
    }
  }
  return q;
}

// U diag(spectrum) V^T with random orthonormal factors.
inline Matrix matrix_with_spectrum(Index rows, Index cols, const Vector& spectrum, std::mt19937_64& rng) {
  Matrix u = random_orthonormal(rows, spectrum.size(), rng);
  Matrix v = random_orthonormal(cols, spectrum.size(), rng);
  return u * spectrum.asDiagonal() * v.transpose();
}

// Erdos-Renyi style undirected graph, canonical u < v pairs.
inline EdgeList random_graph(Index n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  EdgeList edges;
  edges.n_nodes = n;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v)
      if (coin(rng)) edges.edges.push_back({u, v});
  return edges;
}

inline Matrix random_sparse_dense(Index rows, Index cols, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m = Matrix::Zero(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      if (coin(rng)) m(i, j) = normal(rng);
  return m;
}

// Dense D^-1 A with zero rows for isolated nodes.
inline Matrix dense_transition(const Matrix& a) {
  Matrix t = a;
  for (Index i = 0; i < a.rows(); ++i) {
    double d = a.row(i).sum();
    t.row(i) = d > 0 ? Matrix(a.row(i) / d) : Matrix::Zero(1, a.cols());
  }
  return t;
}

// sum_i c_i T^i - lambda (J - A) built from explicit matrix powers.
inline Matrix dense_wys(const Matrix& a, const std::vector<double>& coeffs, double neg_coef) {
  const Index n = a.rows();
  Matrix t = dense_transition(a);
  Matrix power = Matrix::Identity(n, n);
  Matrix out = Matrix::Zero(n, n);
  for (double c : coeffs) {
    power = power * t;
    out += c * power;
  }
  out -= neg_coef * (Matrix::Ones(n, n) - a);
  return out;
}

inline Vector jacobi_singular_values(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

// Frobenius error of the best rank-k approximation.
inline double optimal_error(const Matrix& m, Index k) {
  Vector s = jacobi_singular_values(m);
  return s.size() > k ? s.tail(s.size() - k).norm() : 0.0;
}

// M^T (M M^T)^-1 Y for full-row-rank M.
inline Matrix normal_equations_pinv_apply(const Matrix& m, const Matrix& y) {
  Matrix gram = m * m.transpose();
  return m.transpose() * gram.ldlt().solve(y);
}

inline double orthonormality_defect(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

inline bool descending_nonnegative(const Vector& s) {
  for (Index i = 0; i < s.size(); ++i) {
    if (s[i] < 0.0) return false;
    if (i > 0 && s[i] > s[i - 1]) return false;
  }
  return true;
}

// Pairwise ROC-AUC: wins + ties / 2 over all positive-negative pairs.
inline double pairwise_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  std::int64_t twice_wins = 0, positives = 0, negatives = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 1) ++positives; else ++negatives;
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      if (scores[i] > scores[j]) twice_wins += 2;
      else if (scores[i] == scores[j]) twice_wins += 1;
    }
  }
  return static_cast<double>(twice_wins) / static_cast<double>(2 * positives * negatives);
}

// |u^T (M v) - v^T (M^T u)| for random probes.
inline double transpose_defect(const LinearOperator& op, std::mt19937_64& rng, int probes = 4) {
  double worst = 0.0;
  LinearOperator t = op.transpose();
  for (int p = 0; p < probes; ++p) {
    Matrix u = gaussian_matrix(op.rows(), 1, rng);
    Matrix v = gaussian_matrix(op.cols(), 1, rng);
    double lhs = (u.transpose() * op.apply(v))(0, 0);
    double rhs = (v.transpose() * t.apply(u))(0, 0);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

// max |M(aX + bY) - (aMX + bMY)|.
inline double linearity_defect(const LinearOperator& op, std::mt19937_64& rng) {
  Matrix x = gaussian_matrix(op.cols(), 3, rng);
  Matrix y = gaussian_matrix(op.cols(), 3, rng);
  const double a = 1.7, b = -0.6;
  Matrix lhs = op.apply(a * x + b * y);
  Matrix rhs = a * op.apply(x) + b * op.apply(y);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace fsvd::testing
