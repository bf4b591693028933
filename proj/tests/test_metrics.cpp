#include "fsvd/errors.hpp"
#include "fsvd/metrics.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace fsvd;
using fsvd::testing::pairwise_auc;
using fsvd::testing::random_graph;

TEST_CASE("roc_auc examples") {
  CHECK(roc_auc({0.9, 0.1}, {1, 0}) == 1.0);
  CHECK(roc_auc({0.1, 0.9}, {1, 0}) == 0.0);
  CHECK(roc_auc({0.5, 0.5}, {1, 0}) == 0.5);
  CHECK(roc_auc({0.8, 0.4, 0.6, 0.2}, {1, 1, 0, 0}) == 0.75);
  CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {1, 1}), InputError);
  CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {0, 0}), InputError);
  CHECK_THROWS_AS(roc_auc({0.1}, {1, 0}), InputError);
  CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {2, 0}), InputError);
}

TEST_CASE("roc_auc matches the pairwise count") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 2 + rng() % 199;
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    // Coarse integer scores force plenty of ties.
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng() % 12);
      labels[i] = static_cast<int>(rng() % 2);
    }
    labels[0] = 1;
    labels[1] = 0;
    double expected = pairwise_auc(scores, labels);
    CHECK(roc_auc(scores, labels) == expected);

    std::vector<double> transformed(n);
    for (std::size_t i = 0; i < n; ++i) transformed[i] = std::exp(scores[i]);
    CHECK(roc_auc(transformed, labels) == expected);
    for (std::size_t i = 0; i < n; ++i) transformed[i] = 3.0 * scores[i] - 7.0;
    CHECK(roc_auc(transformed, labels) == expected);
  }
}

TEST_CASE("accuracy") {
  CHECK(accuracy({0, 1, 1}, {0, 1, 0}, {0, 1, 2}) == doctest::Approx(2.0 / 3.0));
  CHECK(accuracy({0, 1, 1}, {0, 1, 0}, {2}) == 0.0);
  CHECK(accuracy({0, 1, 1}, {0, 1, 0}, {0, 1}) == 1.0);
  CHECK_THROWS_AS(accuracy({0}, {0}, {}), InputError);
  CHECK_THROWS_AS(accuracy({0}, {0}, {1}), InputError);
  CHECK_THROWS_AS(accuracy({0}, {0}, {-1}), InputError);
}

TEST_CASE("undirected_edges") {
  CsrMatrix a = csr_from_edges({{{0, 1}, {2, 1}, {3, 3}}, 4}, true);
  CHECK(undirected_edges(a) == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("split_edges") {
  SUBCASE("counts on a ten edge cycle") {
    EdgeList cycle;
    cycle.n_nodes = 10;
    for (Index i = 0; i < 10; ++i) cycle.edges.push_back({i, (i + 1) % 10});
    EdgeSplit split = split_edges(csr_from_edges(cycle, true), 0.2, 3);
    CHECK(split.test_pos.edges.size() == 2);
    CHECK(split.train.edges.size() == 8);
    CHECK(split.test_neg.edges.size() == 2);
    CHECK(split.seed == 3);
  }
  SUBCASE("deterministic for a seed") {
    std::mt19937_64 rng(5);
    CsrMatrix a = csr_from_edges(random_graph(40, 0.2, rng), true);
    EdgeSplit first = split_edges(a, 0.3, 11);
    EdgeSplit second = split_edges(a, 0.3, 11);
    CHECK(first.train.edges == second.train.edges);
    CHECK(first.test_pos.edges == second.test_pos.edges);
    CHECK(first.test_neg.edges == second.test_neg.edges);
  }
  SUBCASE("partitions and disjointness on random graphs") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
      Index n = 5 + static_cast<Index>(rng() % 46);
      CsrMatrix a = csr_from_edges(random_graph(n, 0.2, rng), true);
      std::vector<Edge> edges = undirected_edges(a);
      if (edges.size() < 2) continue;
      EdgeSplit split = split_edges(a, 0.25, static_cast<std::uint64_t>(trial));

      std::set<Edge> all(edges.begin(), edges.end());
      std::set<Edge> train(split.train.edges.begin(), split.train.edges.end());
      std::set<Edge> pos(split.test_pos.edges.begin(), split.test_pos.edges.end());
      std::set<Edge> neg(split.test_neg.edges.begin(), split.test_neg.edges.end());
      CHECK(train.size() + pos.size() == all.size());
      CHECK(neg.size() == pos.size());
      CHECK(neg.size() == split.test_neg.edges.size());
      for (const Edge& e : train) CHECK((all.count(e) == 1 && pos.count(e) == 0));
      for (const Edge& e : pos) CHECK(all.count(e) == 1);
      for (const Edge& e : neg) {
        CHECK(all.count(e) == 0);
        CHECK(e.u < e.v);
      }
    }
  }
  SUBCASE("near-complete graph cannot supply negatives") {
    EdgeList k5;
    k5.n_nodes = 5;
    for (Index u = 0; u < 5; ++u)
      for (Index v = u + 1; v < 5; ++v)
        if (!(u == 0 && v == 1)) k5.edges.push_back({u, v});
    CHECK_THROWS_AS(split_edges(csr_from_edges(k5, true), 0.5, 0), InputError);
  }
  SUBCASE("bad arguments") {
    CsrMatrix a = csr_from_edges({{{0, 1}, {1, 2}}, 4}, true);
    CHECK_THROWS_AS(split_edges(a, 0.0, 0), InputError);
    CHECK_THROWS_AS(split_edges(a, 1.0, 0), InputError);
    CHECK_THROWS_AS(split_edges(csr_from_edges({{{0, 1}}, 4}, true), 0.5, 0), InputError);
  }
}
