#pragma once

#include "fsvd/sparse.hpp"
#include "fsvd/types.hpp"

#include <cstdint>
#include <vector>

namespace fsvd {

// Probability that a random positive outscores a random negative, ties
// counting one half. Computed from tie-averaged ranks in O(n log n).
// Throws InputError unless both classes are present.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Fraction of eval_ids where pred and truth agree. Throws InputError on an
// empty evaluation set or an out-of-range id.
double accuracy(const std::vector<Index>& pred, const std::vector<Index>& truth,
                const std::vector<Index>& eval_ids);

struct EdgeSplit {
  EdgeList train;
  EdgeList test_pos;
  EdgeList test_neg;
  std::uint64_t seed = 0;
};

// Canonical undirected edges (u < v) of A; self-loops are skipped.
std::vector<Edge> undirected_edges(const CsrMatrix& a);

/// Holds out round(test_fraction * m) of the m canonical edges and samples as
/// many negatives uniformly from the complement (rejection sampling). Train
/// keeps the remaining edges. Throws InputError on a bad fraction, fewer than
/// two edges, or when the complement is too small to supply the negatives.
EdgeSplit split_edges(const CsrMatrix& a, double test_fraction, std::uint64_t seed);

}  // namespace fsvd
