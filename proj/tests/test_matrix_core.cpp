#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "jofc/distance.hpp"
#include "jofc/linalg.hpp"
#include "jofc/weights.hpp"
#include "oracle_helpers.hpp"

using namespace jofc;

TEST_CASE("distance matrix of two collinear points") {
  DenseMatrix x(2, 1);
  x(0, 0) = 0.0;
  x(1, 0) = 2.0;
  const DenseMatrix d = euclidean_distance_matrix(x);
  CHECK(d(0, 0) == 0.0);
  CHECK(d(1, 1) == 0.0);
  CHECK(d(0, 1) == doctest::Approx(2.0));
  CHECK(d(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("distance matrix of coincident points is zero") {
  const DenseMatrix d = euclidean_distance_matrix(DenseMatrix(3, 2));
  CHECK(max_abs(d) == 0.0);
}

TEST_CASE("distance matrix equals the brute-force double loop") {
  Rng rng(11);
  const DenseMatrix x = oracle::random_matrix(rng, 5, 2);
  const DenseMatrix fast = euclidean_distance_matrix(x);
  const DenseMatrix slow = oracle::distance_matrix(x);
  CHECK(max_abs_diff(fast, slow) < 1e-14);
}

TEST_CASE("distance matrix satisfies the triangle inequality") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix d =
        euclidean_distance_matrix(oracle::random_matrix(rng, 8, 3, 3.0));
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t k = 0; k < 8; ++k)
          CHECK(d(i, j) <= d(i, k) + d(k, j) + 1e-9);
  }
}

TEST_CASE("double centering kills the all-ones matrix") {
  const DenseMatrix centered = double_center(DenseMatrix::ones(4, 4));
  CHECK(max_abs(centered) < 1e-14);
}

TEST_CASE("double centering recovers the Gram matrix of centered line points") {
  // Squared distances of the points -1, +1.
  DenseMatrix sq(2, 2);
  sq(0, 1) = sq(1, 0) = 4.0;
  const DenseMatrix p = double_center(sq);
  CHECK(p(0, 0) == doctest::Approx(1.0));
  CHECK(p(0, 1) == doctest::Approx(-1.0));
  CHECK(p(1, 0) == doctest::Approx(-1.0));
  CHECK(p(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("double centering zeroes row and column sums") {
  Rng rng(13);
  const DenseMatrix m = oracle::random_symmetric(rng, 6, 2.0);
  const DenseMatrix p = double_center(m);
  for (std::size_t i = 0; i < 6; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < 6; ++j) {
      row += p(i, j);
      col += p(j, i);
    }
    CHECK(std::abs(row) < 1e-10);
    CHECK(std::abs(col) < 1e-10);
  }
}

TEST_CASE("double centering rejects non-square input") {
  CHECK_THROWS_AS(double_center(DenseMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("double centering is idempotent on already centered input") {
  Rng rng(19);
  const DenseMatrix m = oracle::random_symmetric(rng, 5, 3.0);
  const DenseMatrix p = double_center(m);
  // p is doubly centered, so centering -2p reproduces p itself.
  CHECK(max_abs_diff(double_center(-2.0 * p), p) < 1e-12);
}

TEST_CASE("top eigenpairs of a diagonal matrix") {
  DenseMatrix s(3, 3);
  s(0, 0) = 3.0;
  s(1, 1) = 1.0;
  s(2, 2) = 2.0;
  const auto pairs = symmetric_top_eigenpairs(s, 2);
  CHECK(pairs[0].value == doctest::Approx(3.0));
  CHECK(pairs[1].value == doctest::Approx(2.0));
}

TEST_CASE("top eigenpair of the identity") {
  const auto pairs = symmetric_top_eigenpairs(DenseMatrix::identity(4), 1);
  CHECK(pairs[0].value == doctest::Approx(1.0));
  double norm = 0.0;
  for (double v : pairs[0].vector) norm += v * v;
  CHECK(std::sqrt(norm) == doctest::Approx(1.0));
}

TEST_CASE("eigenpairs satisfy the residual bound on random symmetric matrices") {
  Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix s = oracle::random_symmetric(rng, 6, 2.0);
    const auto pairs = symmetric_top_eigenpairs(s, 6);
    const double tol = 1e-8 * frobenius_norm(s);
    for (const auto& pair : pairs) {
      double norm = 0.0;
      for (double v : pair.vector) norm += v * v;
      CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-12);
      double res = 0.0;
      for (std::size_t i = 0; i < 6; ++i) {
        double sv = 0.0;
        for (std::size_t j = 0; j < 6; ++j) sv += s(i, j) * pair.vector[j];
        const double diff = sv - pair.value * pair.vector[i];
        res += diff * diff;
      }
      CHECK(std::sqrt(res) < tol);
    }
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
      CHECK(pairs[i].value >= pairs[i + 1].value);
  }
}

TEST_CASE("eigenpair k range is validated") {
  const DenseMatrix s = DenseMatrix::identity(3);
  CHECK_THROWS_AS(symmetric_top_eigenpairs(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(symmetric_top_eigenpairs(s, 4), std::invalid_argument);
}

TEST_CASE("subspace eigensolver agrees with Jacobi on a gapped spectrum") {
  Rng rng(15);
  const std::size_t n = 90;
  const DenseMatrix q = oracle::random_orthogonal(rng, n);
  DenseMatrix lambda(n, n);
  lambda(0, 0) = 50.0;
  lambda(1, 1) = 30.0;
  lambda(2, 2) = 10.0;
  for (std::size_t i = 3; i < n; ++i)
    lambda(i, i) = rng.uniform(-1.0, 1.0);
  const DenseMatrix s = q * lambda * transpose(q);

  const auto dense = symmetric_top_eigenpairs(s, 3);
  const auto fast = symmetric_top_eigenpairs_subspace(s, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(fast[i].value == doctest::Approx(dense[i].value).epsilon(1e-9));
    double dot = 0.0;
    for (std::size_t r = 0; r < n; ++r) dot += fast[i].vector[r] * dense[i].vector[r];
    CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("pseudoinverse of a singular diagonal matrix") {
  DenseMatrix m(2, 2);
  m(0, 0) = 2.0;
  const DenseMatrix pinv = pseudoinverse_oracle(m);
  CHECK(pinv(0, 0) == doctest::Approx(0.5));
  CHECK(pinv(1, 1) == doctest::Approx(0.0));
  CHECK(pinv(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("pseudoinverse satisfies M pinv M = M on a path-graph Laplacian") {
  DenseMatrix l(3, 3);
  l(0, 0) = 1.0;
  l(1, 1) = 2.0;
  l(2, 2) = 1.0;
  l(0, 1) = l(1, 0) = -1.0;
  l(1, 2) = l(2, 1) = -1.0;
  const DenseMatrix pinv = pseudoinverse_oracle(l);
  CHECK(max_abs_diff(l * pinv * l, l) < 1e-10);
  CHECK(symmetry_gap(pinv) < 1e-10);
}

TEST_CASE("pseudoinverse satisfies all Moore-Penrose conditions on random input") {
  Rng rng(16);
  for (int trial = 0; trial < 8; ++trial) {
    const DenseMatrix s = oracle::random_symmetric(rng, 7, 2.0);
    const DenseMatrix pinv = pseudoinverse_oracle(s);
    CHECK(oracle::moore_penrose_violation(s, pinv) < 1e-8 * frobenius_norm(s));
    CHECK(symmetry_gap(pinv) < 1e-10 * std::max(1.0, max_abs(pinv)));
  }
}

TEST_CASE("pseudoinverse matches the structured factor formula on a JOFC Laplacian") {
  const WeightSpec spec = WeightSpec::uniform(1.0);
  const std::size_t m = 2, n = 4;
  const DenseMatrix dense_l = laplacian_of(dense_weight_matrix(spec, m, n));
  const DenseMatrix from_factors =
      materialize_kronecker(laplacian_pseudoinverse_factors(spec, m, n), n);
  CHECK(max_abs_diff(pseudoinverse_oracle(dense_l), from_factors) < 1e-10);
}

TEST_CASE("small SVD reconstructs and is orthogonal") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const DenseMatrix a = oracle::random_matrix(rng, d, d, 2.0);
    const Svd svd = svd_small(a);
    DenseMatrix us = svd.u;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) us(i, j) *= svd.sigma[j];
    CHECK(max_abs_diff(us * transpose(svd.v), a) < 1e-10);
    CHECK(max_abs_diff(transpose(svd.u) * svd.u, DenseMatrix::identity(d)) < 1e-10);
    CHECK(max_abs_diff(transpose(svd.v) * svd.v, DenseMatrix::identity(d)) < 1e-10);
  }
}

TEST_CASE("small SVD handles rank-deficient input") {
  DenseMatrix a(3, 3);
  a(0, 0) = 2.0;  // rank one
  const Svd svd = svd_small(a);
  CHECK(svd.sigma[0] == doctest::Approx(2.0));
  CHECK(svd.sigma[1] == doctest::Approx(0.0));
  CHECK(max_abs_diff(transpose(svd.u) * svd.u, DenseMatrix::identity(3)) < 1e-10);
}

TEST_CASE("invert_small round trips and rejects singular input") {
  Rng rng(18);
  const DenseMatrix a = oracle::random_matrix(rng, 4, 4, 1.0) + 3.0 * DenseMatrix::identity(4);
  CHECK(max_abs_diff(a * invert_small(a), DenseMatrix::identity(4)) < 1e-10);
  CHECK_THROWS_AS(invert_small(DenseMatrix(2, 2)), NumericalError);
}
