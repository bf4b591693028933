#include "fsvd/errors.hpp"
#include "fsvd/linops.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace fsvd;
using fsvd::testing::gaussian_matrix;

namespace {

CsrMatrix edge_pair() { return csr_from_edges({{{0, 1}}, 2}, true); }

}  // namespace

TEST_CASE("dense_op") {
  std::mt19937_64 rng(1);
  SUBCASE("identity") {
    Matrix v = (Matrix(3, 1) << 1, 2, 3).finished();
    CHECK(dense_op(Matrix::Identity(3, 3)).apply(v) == v);
  }
  SUBCASE("zeros keep block width") {
    Matrix out = dense_op(Matrix::Zero(2, 3)).apply(gaussian_matrix(3, 4, rng));
    CHECK(out.rows() == 2);
    CHECK(out.cols() == 4);
    CHECK(out.isZero());
  }
  SUBCASE("random matrix against direct multiply") {
    Matrix m = gaussian_matrix(7, 5, rng);
    Matrix x = gaussian_matrix(5, 3, rng);
    LinearOperator op = dense_op(m);
    CHECK((op.apply(x) - m * x).cwiseAbs().maxCoeff() <= 1e-12);
    Matrix y = gaussian_matrix(7, 2, rng);
    CHECK((op.transpose().apply(y) - m.transpose() * y).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(op.transpose().rows() == 5);
    CHECK(op.transpose().cols() == 7);
  }
  SUBCASE("wrong block height") {
    CHECK_THROWS_AS(dense_op(Matrix::Zero(2, 3)).apply(Matrix::Zero(2, 1)), InputError);
  }
}

TEST_CASE("WysConfig staircase weights") {
  CHECK(WysConfig{4, 1.0, {}}.context_weights() == std::vector<double>{4, 3, 2, 1});
  CHECK(WysConfig{5, 1.0, {}}.context_weights() == std::vector<double>{5, 4, 3, 2, 1});
  CHECK(WysConfig{2, 0.5, {0.3, 0.7}}.context_weights() == std::vector<double>{0.3, 0.7});
  CHECK_THROWS_AS((WysConfig{0, 1.0, {}}.context_weights()), InputError);
  CHECK_THROWS_AS((WysConfig{2, -1.0, {}}.context_weights()), InputError);
  CHECK_THROWS_AS((WysConfig{2, 1.0, {1.0}}.context_weights()), InputError);
}

TEST_CASE("wys_operator") {
  std::mt19937_64 rng(2);
  SUBCASE("edge pair, C=1, lambda=1") {
    CsrMatrix a = edge_pair();
    LinearOperator op = wys_operator(transition_matrix(a), a, {1, 1.0, {}});
    Matrix out = op.apply((Matrix(2, 1) << 1, 0).finished());
    CHECK(out == (Matrix(2, 1) << -1, 1).finished());
  }
  SUBCASE("lambda=0 reduces to the transition matrix") {
    CsrMatrix a = csr_from_edges(fsvd::testing::random_graph(20, 0.2, rng), true);
    CsrMatrix t = transition_matrix(a);
    LinearOperator op = wys_operator(t, a, {1, 0.0, {}});
    Matrix x = gaussian_matrix(20, 3, rng);
    CHECK((op.apply(x) - dense_op(t.to_dense()).apply(x)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(wys_operator(CsrMatrix::identity(3), CsrMatrix::identity(4), {}), InputError);
  }
  SUBCASE("matches the explicit matrix on random graphs") {
    for (int trial = 0; trial < 40; ++trial) {
      Index n = 2 + static_cast<Index>(rng() % 49);
      double p = 0.05 + 0.3 * static_cast<double>(rng() % 100) / 100.0;
      CsrMatrix a = csr_from_edges(fsvd::testing::random_graph(n, p, rng), true);
      WysConfig cfg{1 + static_cast<Index>(rng() % 6), 0.25 * static_cast<double>(rng() % 8), {}};
      Matrix expected = fsvd::testing::dense_wys(a.to_dense(), cfg.context_weights(), cfg.neg_coef);
      LinearOperator op = wys_operator(transition_matrix(a), a, cfg);
      Matrix x = gaussian_matrix(n, 4, rng);
      CHECK((op.apply(x) - expected * x).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK((op.transpose().apply(x) - expected.transpose() * x).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(fsvd::testing::transpose_defect(op, rng) <= 1e-10);
      CHECK(fsvd::testing::linearity_defect(op, rng) <= 1e-10);
    }
  }
  SUBCASE("directed graph uses explicit transposes") {
    EdgeList edges = {{{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 1}}, 4};
    CsrMatrix a = csr_from_edges(edges, false);
    WysConfig cfg{3, 0.5, {}};
    Matrix expected = fsvd::testing::dense_wys(a.to_dense(), cfg.context_weights(), cfg.neg_coef);
    LinearOperator op = wys_operator(transition_matrix(a), a, cfg);
    Matrix x = gaussian_matrix(4, 2, rng);
    CHECK((op.transpose().apply(x) - expected.transpose() * x).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("jkn_materialize") {
  std::mt19937_64 rng(4);
  SUBCASE("zero layers returns X") {
    Matrix x = gaussian_matrix(5, 3, rng);
    CHECK(jkn_materialize(CsrMatrix::identity(5), x, 0) == x);
  }
  SUBCASE("hand example") {
    CsrMatrix g = renormalized_adjacency(edge_pair());
    Matrix m = jkn_materialize(g, Matrix::Identity(2, 2), 1);
    Matrix expected = (Matrix(2, 4) << 1, 0, 0.5, 0.5, 0, 1, 0.5, 0.5).finished();
    CHECK((m - expected).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("blocks match dense powers") {
    CsrMatrix g = renormalized_adjacency(csr_from_edges(fsvd::testing::random_graph(10, 0.3, rng), true));
    Matrix gd = g.to_dense();
    Matrix x = gaussian_matrix(10, 3, rng);
    Matrix m = jkn_materialize(g, x, 4);
    Matrix power = Matrix::Identity(10, 10);
    for (Index layer = 0; layer <= 4; ++layer) {
      CHECK((m.middleCols(layer * 3, 3) - power * x).cwiseAbs().maxCoeff() <= 1e-10);
      power = gd * power;
    }
  }
  SUBCASE("one more layer appends g times the last block") {
    CsrMatrix g = renormalized_adjacency(csr_from_edges(fsvd::testing::random_graph(12, 0.3, rng), true));
    Matrix x = gaussian_matrix(12, 2, rng);
    for (Index layers = 0; layers < 4; ++layers) {
      Matrix shorter = jkn_materialize(g, x, layers);
      Matrix longer = jkn_materialize(g, x, layers + 1);
      CHECK(longer.leftCols(shorter.cols()) == shorter);
      CHECK(longer.rightCols(2) == spmm(g, Matrix(shorter.rightCols(2))));
    }
  }
  SUBCASE("gathered rows equal materialized rows") {
    CsrMatrix g = renormalized_adjacency(csr_from_edges(fsvd::testing::random_graph(15, 0.2, rng), true));
    Matrix x = gaussian_matrix(15, 3, rng);
    Matrix full = jkn_materialize(g, x, 3);
    std::vector<Index> rows{14, 0, 7};
    Matrix gathered = jkn_rows(g, x, 3, rows);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(gathered.row(static_cast<Index>(i)) == full.row(rows[i]));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(jkn_materialize(CsrMatrix::identity(3), Matrix::Zero(4, 2), 1), InputError);
    CHECK_THROWS_AS(jkn_materialize(CsrMatrix::identity(3), Matrix::Zero(3, 2), -1), InputError);
    CHECK_THROWS_AS(jkn_rows(CsrMatrix::identity(3), Matrix::Zero(3, 2), 1, {3}), InputError);
  }
}

TEST_CASE("centered_op") {
  std::mt19937_64 rng(6);
  SUBCASE("identical rows vanish") {
    Matrix x = Matrix::Ones(6, 1) * gaussian_matrix(1, 4, rng);
    Matrix out = centered_op(x).apply(gaussian_matrix(4, 3, rng));
    CHECK(out.cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("already centered input is unchanged") {
    Matrix x = gaussian_matrix(8, 5, rng);
    x.rowwise() -= x.colwise().mean();
    Matrix v = gaussian_matrix(5, 2, rng);
    CHECK((centered_op(x).apply(v) - dense_op(x).apply(v)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("matches explicit centering") {
    Matrix x = gaussian_matrix(9, 4, rng) + Matrix::Constant(9, 4, 3.0);
    Matrix centered = x.rowwise() - x.colwise().mean();
    LinearOperator op = centered_op(x);
    Matrix v = gaussian_matrix(4, 3, rng);
    Matrix u = gaussian_matrix(9, 3, rng);
    CHECK((op.apply(v) - centered * v).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((op.transpose().apply(u) - centered.transpose() * u).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(fsvd::testing::transpose_defect(op, rng) <= 1e-10);
    CHECK(fsvd::testing::linearity_defect(op, rng) <= 1e-10);
  }
}

TEST_CASE("sparse_op matches its dense form") {
  std::mt19937_64 rng(8);
  Matrix dense = fsvd::testing::random_sparse_dense(12, 9, 0.3, rng);
  LinearOperator op = sparse_op(CsrMatrix::from_dense(dense));
  Matrix x = gaussian_matrix(9, 2, rng);
  Matrix y = gaussian_matrix(12, 2, rng);
  CHECK((op.apply(x) - dense * x).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((op.transpose().apply(y) - dense.transpose() * y).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(fsvd::testing::linearity_defect(op, rng) <= 1e-10);
}
