#pragma once

#include "fsvd/linops.hpp"
#include "fsvd/types.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace fsvd {

/// Truncated factorization M ~ U diag(s) V^T.
///
/// U is r x k and V is c x k with orthonormal columns, s is descending and
/// non-negative. Each U column is signed so its largest-magnitude entry is
/// positive; V follows the same flips.
struct SvdResult {
  Matrix u;
  Vector s;
  Matrix v;
  Index k = 0;
  // Power-iteration rounds actually run. Zero when the sketch already spans
  // the whole smaller dimension, where extra rounds cannot change the answer.
  Index iterations_used = 0;

  Matrix reconstruct() const;
};

struct FsvdParams {
  Index rank = 32;
  Index iterations = 10;
  std::uint64_t seed = 0;

  // Sketch width is oversampling * rank, clipped to min(r, c).
  static constexpr Index oversampling = 2;
};

/// Randomized truncated SVD that touches the matrix only through `op`.
///
/// Draws a c x 2k Gaussian sketch, runs `iterations` rounds of
/// Q <- orth(M Q), Q <- orth(M^T Q), then Q <- orth(M Q), B <- (M^T Q)^T,
/// and lifts the thin SVD of B back through Q. Bitwise deterministic for a
/// fixed seed.
///
/// Throws InputError when rank is not in [1, min(r, c)] or iterations < 1,
/// and NumericError when the operator produces non-finite values.
SvdResult fsvd(const LinearOperator& op, const FsvdParams& params);

// Q factor of a Householder QR. Columns whose diagonal R entry is negligible
// (below 1e-12 of the largest, or all of them for a zero input) are replaced
// by Gaussian draws from `rng` and the factorization is redone.
Matrix orthonormalize(const Matrix& m, std::mt19937_64& rng);

struct SmallSvd {
  Matrix u;  // p x p
  Vector s;  // length p, descending
  Matrix v;  // c x p
};

// Thin SVD of a short-wide block (p <= c). Throws NumericError on non-finite
// input and InputError when p > c.
SmallSvd small_svd(const Matrix& b);

// Singular values below this fraction of the largest are dropped when inverting.
inline constexpr double kPinvRelativeTolerance = 1e-10;

// V diag(1/s) (U^T Y), evaluated right to left. Throws DegenerateInputError
// when no singular value survives the drop tolerance.
Matrix pseudoinverse_apply(const SvdResult& svd, const Matrix& y);

enum class ErrorMethod { kExact, kProbe };

std::string_view to_string(ErrorMethod method);

struct ReconstructionError {
  double value = 0.0;
  ErrorMethod method = ErrorMethod::kExact;
};

struct ReconstructionOptions {
  // Dense-backed operators are always measured exactly; force_probe overrides.
  bool force_probe = false;
  Index probes = 64;
  std::uint64_t seed = 7;
};

// ||M - U diag(s) V^T||_F. Dense-backed operators are measured exactly; implicit
// ones use a Hutchinson estimate with Rademacher probes.
ReconstructionError reconstruction_error(const LinearOperator& op, const SvdResult& svd,
                                         const ReconstructionOptions& options = {});

// Exact variant that materializes the operator column by column.
double exact_reconstruction_error(const LinearOperator& op, const SvdResult& svd);

}  // namespace fsvd
