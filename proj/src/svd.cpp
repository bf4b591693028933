#include "fsvd/svd.hpp"

#include "fsvd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fsvd {

namespace {

constexpr double kDeficientColumnTolerance = 1e-12;
constexpr int kMaxReorthAttempts = 8;

Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = normal(rng);
  }
  return out;
}

const Matrix& require_finite(const Matrix& m, const char* where) {
  if (!m.allFinite()) throw NumericError(std::string("non-finite values produced by ") + where);
  return m;
}

// Flip each column pair so the largest-magnitude entry of the U column is positive.
void fix_signs(Matrix& u, Matrix& v) {
  for (Index j = 0; j < u.cols(); ++j) {
    Index pivot = 0;
    double best = -1.0;
    for (Index i = 0; i < u.rows(); ++i) {
      double mag = std::abs(u(i, j));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (u.rows() > 0 && u(pivot, j) < 0.0) {
      u.col(j) = -u.col(j);
      v.col(j) = -v.col(j);
    }
  }
}

}  // namespace

Matrix SvdResult::reconstruct() const { return u * s.asDiagonal() * v.transpose(); }

Matrix orthonormalize(const Matrix& m, std::mt19937_64& rng) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  if (cols > rows) {
    throw InputError("cannot orthonormalize " + std::to_string(cols) + " columns in dimension " +
                     std::to_string(rows));
  }
  if (!m.allFinite()) throw NumericError("orthonormalize given non-finite input");

  Matrix work = m;
  for (int attempt = 0;; ++attempt) {
    Eigen::HouseholderQR<Matrix> qr(work);
    Vector diag = qr.matrixQR().diagonal().cwiseAbs();
    double largest = cols > 0 ? diag.maxCoeff() : 0.0;
    double threshold = kDeficientColumnTolerance * largest;

    std::vector<Index> deficient;
    for (Index j = 0; j < cols; ++j) {
      if (largest == 0.0 || diag[j] <= threshold) deficient.push_back(j);
    }
    if (deficient.empty() || attempt == kMaxReorthAttempts) {
      Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
      return q;
    }

    double scale = cols > 0 ? work.colwise().norm().maxCoeff() : 0.0;
    if (scale == 0.0) scale = 1.0;
    scale /= std::sqrt(static_cast<double>(rows));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Index j : deficient) {
      for (Index i = 0; i < rows; ++i) work(i, j) = scale * normal(rng);
    }
  }
}

SmallSvd small_svd(const Matrix& b) {
  const Index p = b.rows();
  const Index c = b.cols();
  if (p > c) throw InputError("small_svd expects a short-wide block, got " + std::to_string(p) + "x" + std::to_string(c));
  if (!b.allFinite()) throw NumericError("small_svd given non-finite input");

  // B^T = Q R, so B = R^T Q^T and only the p x p factor R^T is decomposed.
  Eigen::HouseholderQR<Matrix> qr(b.transpose());
  Matrix q = qr.householderQ() * Matrix::Identity(c, p);
  Matrix r_t = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>().toDenseMatrix().transpose();

  Eigen::BDCSVD<Matrix> svd(r_t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SmallSvd out;
  out.u = svd.matrixU();
  out.s = svd.singularValues();
  out.v = q * svd.matrixV();
  return out;
}

SvdResult fsvd(const LinearOperator& op, const FsvdParams& params) {
  const Index r = op.rows();
  const Index c = op.cols();
  const Index smaller = std::min(r, c);
  if (params.rank < 1 || params.rank > smaller) {
    throw InputError("rank " + std::to_string(params.rank) + " outside [1, " + std::to_string(smaller) +
                     "] for a " + std::to_string(r) + "x" + std::to_string(c) + " operator");
  }
  if (params.iterations < 1) throw InputError("iterations must be at least 1");

  const Index k = params.rank;
  const Index width = std::min(FsvdParams::oversampling * k, smaller);
  const Index rounds = width == smaller ? 0 : params.iterations;
  const LinearOperator op_t = op.transpose();

  std::mt19937_64 rng(params.seed);
  Matrix q = gaussian(c, width, rng);
  for (Index i = 0; i < rounds; ++i) {
    q = orthonormalize(require_finite(op.apply(q), "product"), rng);
    q = orthonormalize(require_finite(op_t.apply(q), "transpose product"), rng);
  }
  q = orthonormalize(require_finite(op.apply(q), "product"), rng);
  Matrix b = require_finite(op_t.apply(q), "transpose product").transpose();

  SmallSvd small = small_svd(b);
  SvdResult result;
  result.u = q * small.u.leftCols(k);
  result.s = small.s.head(k);
  result.v = small.v.leftCols(k);
  result.k = k;
  result.iterations_used = rounds;
  fix_signs(result.u, result.v);
  return result;
}

Matrix pseudoinverse_apply(const SvdResult& svd, const Matrix& y) {
  if (y.rows() != svd.u.rows()) {
    throw InputError("pseudoinverse_apply: Y has " + std::to_string(y.rows()) + " rows, expected " +
                     std::to_string(svd.u.rows()));
  }
  const double top = svd.s.size() > 0 ? svd.s[0] : 0.0;
  Index kept = 0;
  if (top > 0.0 && std::isfinite(top)) {
    while (kept < svd.s.size() && svd.s[kept] >= kPinvRelativeTolerance * top) ++kept;
  }
  if (kept == 0) throw DegenerateInputError("every singular value is below the pseudoinverse tolerance");

  Matrix projected = svd.u.leftCols(kept).transpose() * y;
  projected.array().colwise() /= svd.s.head(kept).array();
  return svd.v.leftCols(kept) * projected;
}

std::string_view to_string(ErrorMethod method) {
  return method == ErrorMethod::kExact ? "exact" : "probe";
}

double exact_reconstruction_error(const LinearOperator& op, const SvdResult& svd) {
  Matrix m;
  if (const Matrix* explicit_matrix = op.explicit_matrix()) {
    m = op.is_transposed() ? Matrix(explicit_matrix->transpose()) : *explicit_matrix;
  } else {
    m = op.apply(Matrix::Identity(op.cols(), op.cols()));
  }
  if (m.rows() != svd.u.rows() || m.cols() != svd.v.rows()) {
    throw InputError("operator and factorization shapes differ");
  }
  return (m - svd.reconstruct()).norm();
}

ReconstructionError reconstruction_error(const LinearOperator& op, const SvdResult& svd,
                                         const ReconstructionOptions& options) {
  if (op.rows() != svd.u.rows() || op.cols() != svd.v.rows()) {
    throw InputError("operator and factorization shapes differ");
  }
  if (op.explicit_matrix() && !options.force_probe) {
    return {exact_reconstruction_error(op, svd), ErrorMethod::kExact};
  }
  if (options.probes < 1) throw InputError("probe count must be positive");

  std::mt19937_64 rng(options.seed);
  std::bernoulli_distribution coin(0.5);
  Matrix z(op.cols(), options.probes);
  for (Index j = 0; j < z.cols(); ++j) {
    for (Index i = 0; i < z.rows(); ++i) z(i, j) = coin(rng) ? 1.0 : -1.0;
  }
  Matrix residual = op.apply(z);
  residual.noalias() -= svd.u * (svd.s.asDiagonal() * (svd.v.transpose() * z));
  double mean_sq = residual.squaredNorm() / static_cast<double>(options.probes);
  return {std::sqrt(mean_sq), ErrorMethod::kProbe};
}

}  // namespace fsvd
