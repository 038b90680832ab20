#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "jofc/linalg.hpp"
#include "jofc/weights.hpp"
#include "oracle_helpers.hpp"

using namespace jofc;

TEST_CASE("script_w for two uniform modalities") {
  const DenseMatrix w = script_w(WeightSpec::uniform(1.0), 2, 3);
  CHECK(w(0, 0) == doctest::Approx(4.0));
  CHECK(w(1, 1) == doctest::Approx(4.0));
  CHECK(w(0, 1) == doctest::Approx(-1.0));
  CHECK(w(1, 0) == doctest::Approx(-1.0));
}

TEST_CASE("script_w for a single modality") {
  const DenseMatrix w = script_w(WeightSpec::uniform(1.0), 1, 5);
  CHECK(w.rows() == 1);
  CHECK(w(0, 0) == doctest::Approx(5.0));
}

TEST_CASE("script_w for product weights") {
  const DenseMatrix w = script_w(WeightSpec::product({1.0, 2.0}, 1.0), 2, 3);
  CHECK(w(0, 0) == doctest::Approx(5.0));   // 3*1 + 1*2
  CHECK(w(1, 1) == doctest::Approx(8.0));   // 3*2 + 2*1
  CHECK(w(0, 1) == doctest::Approx(-2.0));  // -w_11*w_22
}

TEST_CASE("script_w rejects nonpositive weights") {
  CHECK_THROWS_AS(WeightSpec::uniform(0.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::uniform(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::product({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("script_w_inverse closed form for two uniform modalities") {
  const DenseMatrix inv = script_w_inverse(WeightSpec::uniform(1.0), 2, 3);
  CHECK(inv(0, 0) == doctest::Approx(4.0 / 15.0));
  CHECK(inv(0, 1) == doctest::Approx(1.0 / 15.0));
  CHECK(inv(1, 0) == doctest::Approx(1.0 / 15.0));
  CHECK(inv(1, 1) == doctest::Approx(4.0 / 15.0));
}

TEST_CASE("script_w_inverse for a single modality") {
  const DenseMatrix inv = script_w_inverse(WeightSpec::uniform(1.0), 1, 5);
  CHECK(inv(0, 0) == doctest::Approx(0.2));
}

TEST_CASE("script_w_inverse closed form for unit product weights") {
  const DenseMatrix inv = script_w_inverse(WeightSpec::product({1.0, 1.0}, 1.0), 2, 4);
  CHECK(inv(0, 0) == doctest::Approx(5.0 / 24.0));
  CHECK(inv(0, 1) == doctest::Approx(1.0 / 24.0));
}

TEST_CASE("closed-form inverses match direct inversion across the grid") {
  for (std::size_t m : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{5}})
    for (std::size_t n : {std::size_t{2}, std::size_t{4}, std::size_t{7}})
      for (double w : {0.1, 1.0, 10.0})
        for (const WeightSpec& spec : oracle::weight_specs_for(m, w)) {
          const DenseMatrix direct = invert_small(script_w(spec, m, n));
          const DenseMatrix closed = script_w_inverse(spec, m, n);
          CHECK(max_abs_diff(direct, closed) < 1e-12);
        }
}

TEST_CASE("ScriptW validates the inverse product") {
  const ScriptW sw = ScriptW::make(WeightSpec::uniform(2.0), 3, 6);
  CHECK(max_abs_diff(sw.w * sw.w_inverse, DenseMatrix::identity(3)) < 1e-12);
}

TEST_CASE("kronecker inverse with a zero J factor") {
  Rng rng(21);
  const DenseMatrix a =
      oracle::random_matrix(rng, 3, 3, 0.5) + 4.0 * DenseMatrix::identity(3);
  const KroneckerFactors f = kronecker_sum_inverse(a, DenseMatrix(3, 3), 4);
  CHECK(max_abs_diff(f.v, invert_small(a)) < 1e-12);
  CHECK(max_abs(f.z) < 1e-12);
}

TEST_CASE("kronecker inverse of I + I (x) J") {
  const DenseMatrix eye = DenseMatrix::identity(2);
  const KroneckerFactors f = kronecker_sum_inverse(eye, eye, 2);
  CHECK(max_abs_diff(f.v, eye) < 1e-14);
  CHECK(f.z(0, 0) == doctest::Approx(-1.0 / 3.0));
  CHECK(f.z(1, 1) == doctest::Approx(-1.0 / 3.0));
  CHECK(f.z(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("kronecker inverse has identity residual on random factors") {
  Rng rng(22);
  const std::size_t m = 3, n = 4;
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix a =
        oracle::random_matrix(rng, m, m, 0.4) + 5.0 * DenseMatrix::identity(m);
    const DenseMatrix b = oracle::random_matrix(rng, m, m, 0.3);
    const KroneckerFactors inverse = kronecker_sum_inverse(a, b, n);

    // Materialize A (x) I + B (x) J directly and multiply.
    DenseMatrix forward(m * n, m * n);
    for (std::size_t bi = 0; bi < m; ++bi)
      for (std::size_t bj = 0; bj < m; ++bj)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            forward(bi * n + i, bj * n + j) =
                b(bi, bj) + (i == j ? a(bi, bj) : 0.0);
    const DenseMatrix product = forward * materialize_kronecker(inverse, n);
    CHECK(max_abs_diff(product, DenseMatrix::identity(m * n)) < 1e-9);
  }
}

TEST_CASE("kronecker inverse rejects singular factors") {
  CHECK_THROWS_AS(kronecker_sum_inverse(DenseMatrix(2, 2), DenseMatrix::identity(2), 3),
                  NumericalError);
}

TEST_CASE("single-modality Laplacian factors are 1/n and -1/n^2") {
  const KroneckerFactors f =
      laplacian_pseudoinverse_factors(WeightSpec::uniform(1.0), 1, 6);
  CHECK(f.v(0, 0) == doctest::Approx(1.0 / 6.0));
  CHECK(f.z(0, 0) == doctest::Approx(-1.0 / 36.0));
}

TEST_CASE("pseudoinverse factors match the dense oracle across the grid") {
  for (std::size_t m : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{5}})
    for (std::size_t n : {std::size_t{2}, std::size_t{4}, std::size_t{7}})
      for (double w : {0.1, 1.0, 10.0})
        for (const WeightSpec& spec : oracle::weight_specs_for(m, w)) {
          const DenseMatrix dense_w = dense_weight_matrix(spec, m, n);
          const DenseMatrix dense_l = laplacian_of(dense_w);

          // Laplacian rows sum to zero by construction.
          for (std::size_t i = 0; i < m * n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < m * n; ++j) row += dense_l(i, j);
            CHECK(std::abs(row) < 1e-10 * std::max(1.0, max_abs(dense_l)));
          }

          const DenseMatrix materialized =
              materialize_kronecker(laplacian_pseudoinverse_factors(spec, m, n), n);
          const DenseMatrix oracle_pinv = pseudoinverse_oracle(dense_l);
          CHECK(frobenius_norm(materialized - oracle_pinv) < 1e-8);
        }
}

TEST_CASE("factor identity (V,Z) L = I - J/(mn) for uniform weights") {
  for (std::size_t m : {std::size_t{1}, std::size_t{2}, std::size_t{4}})
    for (std::size_t n : {std::size_t{3}, std::size_t{5}})
      for (double w : {0.5, 2.0}) {
        const WeightSpec spec = WeightSpec::uniform(w);
        const DenseMatrix pinv =
            materialize_kronecker(laplacian_pseudoinverse_factors(spec, m, n), n);
        const DenseMatrix dense_l = laplacian_of(dense_weight_matrix(spec, m, n));
        DenseMatrix projector = pinv * dense_l;
        const double mn = static_cast<double>(m * n);
        for (std::size_t i = 0; i < m * n; ++i)
          for (std::size_t j = 0; j < m * n; ++j)
            projector(i, j) += 1.0 / mn - (i == j ? 1.0 : 0.0);
        CHECK(max_abs(projector) < 1e-10);
      }
}

TEST_CASE("shifted-inverse identity matches the pseudoinverse on the grid") {
  for (std::size_t m : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{5}})
    for (std::size_t n : {std::size_t{2}, std::size_t{4}, std::size_t{7}})
      for (double w : {0.1, 1.0, 10.0})
        for (const WeightSpec& spec : oracle::weight_specs_for(m, w)) {
          const DenseMatrix dense_l = laplacian_of(dense_weight_matrix(spec, m, n));
          const double mn = static_cast<double>(m * n);
          DenseMatrix shifted = dense_l;
          for (std::size_t i = 0; i < shifted.size(); ++i) shifted.data()[i] += 1.0 / mn;
          DenseMatrix via_shift = invert_small(shifted);
          for (std::size_t i = 0; i < via_shift.size(); ++i)
            via_shift.data()[i] -= 1.0 / mn;
          CHECK(frobenius_norm(via_shift - pseudoinverse_oracle(dense_l)) < 1e-8);
        }
}

TEST_CASE("dense weight matrix blocks") {
  const DenseMatrix w = dense_weight_matrix(WeightSpec::uniform(2.5), 2, 3);
  // Off-diagonal blocks are w I_n.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(w(i, 3 + j) == doctest::Approx(i == j ? 2.5 : 0.0));
  // Diagonal blocks are J_n - I_n.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(w(i, j) == doctest::Approx(i == j ? 0.0 : 1.0));
}

TEST_CASE("single-modality dense weights are J - I") {
  const DenseMatrix w = dense_weight_matrix(WeightSpec::uniform(1.0), 1, 4);
  const DenseMatrix expected = DenseMatrix::ones(4, 4) - DenseMatrix::identity(4);
  CHECK(max_abs_diff(w, expected) < 1e-15);
}

TEST_CASE("weight row sums equal the Laplacian degree diagonal") {
  const WeightSpec spec = WeightSpec::product({1.0, 2.0, 0.5}, 2.0);
  const DenseMatrix w = dense_weight_matrix(spec, 3, 4);
  const DenseMatrix l = laplacian_of(w);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < w.cols(); ++j) row += w(i, j);
    CHECK(l(i, i) == doctest::Approx(row));
  }
}

TEST_CASE("dense weight matrix honors the size cap") {
  CHECK_THROWS_AS(dense_weight_matrix(WeightSpec::uniform(1.0), 10, 10, 50),
                  std::invalid_argument);
}

TEST_CASE("general weight spec round trip") {
  DenseMatrix g(2, 2);
  g(0, 0) = 2.0;
  g(1, 1) = 3.0;
  g(0, 1) = g(1, 0) = 0.4;
  const WeightSpec spec = WeightSpec::general(g);
  CHECK(spec.within_weight(0) == doctest::Approx(2.0));
  CHECK(spec.within_weight(1) == doctest::Approx(3.0));
  CHECK(spec.cross_weight(0, 1) == doctest::Approx(0.4));
  CHECK_THROWS_AS(spec.validate(3), std::invalid_argument);
}

TEST_CASE("general weight spec rejects asymmetric or nonpositive matrices") {
  DenseMatrix skew(2, 2);
  skew(0, 0) = skew(1, 1) = 1.0;
  skew(0, 1) = 0.5;
  skew(1, 0) = 0.6;
  CHECK_THROWS_AS(WeightSpec::general(skew), std::invalid_argument);

  DenseMatrix zeroed(2, 2);
  zeroed(0, 0) = 1.0;  // remaining entries are zero
  zeroed(0, 1) = zeroed(1, 0) = 1.0;
  CHECK_THROWS_AS(WeightSpec::general(zeroed), std::invalid_argument);
}
