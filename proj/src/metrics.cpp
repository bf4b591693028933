#include "fsvd/metrics.hpp"

#include "fsvd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace fsvd {

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) throw InputError("scores and labels differ in length");
  std::int64_t positives = 0;
  for (int label : labels) {
    if (label != 0 && label != 1) throw InputError("labels must be 0 or 1");
    positives += label;
  }
  const std::int64_t negatives = static_cast<std::int64_t>(labels.size()) - positives;
  if (positives == 0 || negatives == 0) throw InputError("roc_auc is undefined with a single class");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Twice the positive rank sum; a tie group spanning 1-based ranks
  // [first, last] gives every member rank (first + last) / 2.
  std::int64_t twice_rank_sum = 0;
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin;
    while (end < order.size() && scores[order[end]] == scores[order[begin]]) ++end;
    std::int64_t group_pos = 0;
    for (std::size_t i = begin; i < end; ++i) group_pos += labels[order[i]];
    twice_rank_sum += group_pos * static_cast<std::int64_t>(begin + 1 + end);
    begin = end;
  }
  std::int64_t twice_u = twice_rank_sum - positives * (positives + 1);
  return static_cast<double>(twice_u) / static_cast<double>(2 * positives * negatives);
}

double accuracy(const std::vector<Index>& pred, const std::vector<Index>& truth,
                const std::vector<Index>& eval_ids) {
  if (eval_ids.empty()) throw InputError("accuracy needs a non-empty evaluation set");
  std::size_t hits = 0;
  for (Index id : eval_ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= pred.size() || static_cast<std::size_t>(id) >= truth.size()) {
      throw InputError("evaluation id " + std::to_string(id) + " out of range");
    }
    if (pred[id] == truth[id]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(eval_ids.size());
}

std::vector<Edge> undirected_edges(const CsrMatrix& a) {
  std::set<Edge> unique;
  const auto& offsets = a.row_offsets();
  const auto& cols = a.col_indices();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index p = offsets[i]; p < offsets[i + 1]; ++p) {
      Index j = cols[p];
      if (i != j) unique.insert({std::min(i, j), std::max(i, j)});
    }
  }
  return {unique.begin(), unique.end()};
}

EdgeSplit split_edges(const CsrMatrix& a, double test_fraction, std::uint64_t seed) {
  if (!a.is_square()) throw InputError("split_edges needs a square adjacency matrix");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw InputError("test fraction must lie in (0, 1)");

  std::vector<Edge> edges = undirected_edges(a);
  const auto m = static_cast<std::int64_t>(edges.size());
  if (m < 2) throw InputError("need at least two edges to split");
  std::int64_t n_test = std::llround(test_fraction * static_cast<double>(m));
  n_test = std::clamp<std::int64_t>(n_test, 1, m - 1);

  const Index n = a.rows();
  const std::int64_t non_edges = n * (n - 1) / 2 - m;
  if (non_edges < n_test) {
    throw InputError("graph complement has " + std::to_string(non_edges) + " pairs, need " +
                     std::to_string(n_test) + " negatives");
  }

  std::mt19937_64 rng(seed);
  std::shuffle(edges.begin(), edges.end(), rng);

  EdgeSplit split;
  split.seed = seed;
  split.train.n_nodes = split.test_pos.n_nodes = split.test_neg.n_nodes = n;
  split.test_pos.edges.assign(edges.begin(), edges.begin() + n_test);
  split.train.edges.assign(edges.begin() + n_test, edges.end());
  std::sort(split.test_pos.edges.begin(), split.test_pos.edges.end());
  std::sort(split.train.edges.begin(), split.train.edges.end());

  std::set<Edge> taken(edges.begin(), edges.end());
  std::uniform_int_distribution<Index> pick(0, n - 1);
  const std::int64_t max_draws = 1000 + 200 * n_test;
  for (std::int64_t draw = 0; draw < max_draws && static_cast<std::int64_t>(split.test_neg.edges.size()) < n_test;
       ++draw) {
    Index u = pick(rng);
    Index v = pick(rng);
    if (u == v) continue;
    Edge candidate{std::min(u, v), std::max(u, v)};
    if (taken.insert(candidate).second) split.test_neg.edges.push_back(candidate);
  }
  if (static_cast<std::int64_t>(split.test_neg.edges.size()) < n_test) {
    throw InputError("could not sample enough negative edges from the graph complement");
  }
  return split;
}

}  // namespace fsvd
