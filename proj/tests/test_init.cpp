#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "jofc/distance.hpp"
#include "jofc/init.hpp"
#include "jofc/solver.hpp"
#include "oracle_helpers.hpp"

using namespace jofc;

TEST_CASE("cmds recovers two line points up to sign") {
  DenseMatrix delta(2, 2);
  delta(0, 1) = delta(1, 0) = 2.0;
  const DenseMatrix x = cmds(delta, 1);
  CHECK(std::abs(x(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(x(1, 0)) == doctest::Approx(1.0));
  CHECK(x(0, 0) == doctest::Approx(-x(1, 0)));
}

TEST_CASE("cmds round trips Euclidean-realizable planar data") {
  Rng rng(61);
  const DenseMatrix points = oracle::random_matrix(rng, 12, 2, 2.0);
  const DenseMatrix delta = euclidean_distance_matrix(points);
  const DenseMatrix embedded = cmds(delta, 2);
  CHECK(max_abs_diff(euclidean_distance_matrix(embedded), delta) < 1e-8);
}

TEST_CASE("cmds of a zero dissimilarity is the zero configuration") {
  const DenseMatrix x = cmds(DenseMatrix(4, 4), 2);
  CHECK(max_abs(x) < 1e-12);
}

TEST_CASE("cmds clamps negative directions to zero columns") {
  // A strongly non-Euclidean dissimilarity: the centered spectrum has only
  // one meaningfully positive direction, so column 2 must clamp to zero.
  DenseMatrix delta(3, 3);
  delta(0, 1) = delta(1, 0) = 1.0;
  delta(0, 2) = delta(2, 0) = 1.0;
  delta(1, 2) = delta(2, 1) = 2.0;
  const DenseMatrix x = cmds(delta, 3);
  double col2 = 0.0;
  for (std::size_t i = 0; i < 3; ++i) col2 = std::max(col2, std::abs(x(i, 2)));
  CHECK(col2 < 1e-9);
}

TEST_CASE("cmds validates the dimension") {
  CHECK_THROWS_AS(cmds(DenseMatrix(3, 3), 4), std::invalid_argument);
  CHECK_THROWS_AS(cmds(DenseMatrix(3, 3), 0), std::invalid_argument);
}

TEST_CASE("cmds output is column centered at the subspace-path size too") {
  Rng rng(62);
  const DenseMatrix points = oracle::random_matrix(rng, 400, 2, 2.0);
  const DenseMatrix delta = euclidean_distance_matrix(points);
  const DenseMatrix x = cmds(delta, 2);
  for (double mean : column_means(x)) CHECK(std::abs(mean) < 1e-10);
  CHECK(max_abs_diff(euclidean_distance_matrix(x), delta) < 1e-6);
}

TEST_CASE("procrustes undoes a random rotation exactly") {
  Rng rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    DenseMatrix target = oracle::random_matrix(rng, 9, 3);
    center_columns(target);
    const DenseMatrix q = oracle::random_orthogonal(rng, 3);
    const DenseMatrix source = target * q;
    const DenseMatrix fitted = orthogonal_procrustes(source, target);
    CHECK(max_abs_diff(fitted, target) < 1e-9);
  }
}

TEST_CASE("procrustes of a configuration onto itself is the identity fit") {
  Rng rng(64);
  DenseMatrix x = oracle::random_matrix(rng, 8, 2);
  center_columns(x);
  CHECK(max_abs_diff(orthogonal_procrustes(x, x), x) < 1e-10);
}

TEST_CASE("no random rotation beats the procrustes fit") {
  Rng rng(65);
  for (int trial = 0; trial < 5; ++trial) {
    DenseMatrix source = oracle::random_matrix(rng, 7, 2);
    DenseMatrix target = oracle::random_matrix(rng, 7, 2);
    center_columns(source);
    center_columns(target);
    const DenseMatrix fitted = orthogonal_procrustes(source, target);
    const double best = frobenius_norm(fitted - target);
    for (int probe = 0; probe < 100; ++probe) {
      const DenseMatrix q = oracle::random_orthogonal(rng, 2);
      CHECK(best <= frobenius_norm(source * q - target) + 1e-12);
    }
  }
}

TEST_CASE("procrustes preserves interpoint distances") {
  Rng rng(66);
  DenseMatrix source = oracle::random_matrix(rng, 10, 3);
  DenseMatrix target = oracle::random_matrix(rng, 10, 3);
  center_columns(source);
  const DenseMatrix fitted = orthogonal_procrustes(source, target);
  CHECK(max_abs_diff(euclidean_distance_matrix(fitted),
                     euclidean_distance_matrix(source)) < 1e-10);
}

TEST_CASE("procrustes handles rank-deficient cross products") {
  Rng rng(67);
  DenseMatrix source = oracle::random_matrix(rng, 6, 2);
  DenseMatrix target(6, 2);  // zero target: any rotation is optimal
  const DenseMatrix fitted = orthogonal_procrustes(source, target);
  center_columns(source);
  CHECK(max_abs_diff(euclidean_distance_matrix(fitted),
                     euclidean_distance_matrix(source)) < 1e-10);
}

TEST_CASE("averaged init of identical modalities stacks the anchor") {
  Rng rng(68);
  const DenseMatrix points = oracle::random_matrix(rng, 10, 2, 2.0);
  const DenseMatrix delta = euclidean_distance_matrix(points);
  OmnibusProblem problem({delta, delta, delta});
  const Configuration init = averaged_procrustes_init(problem, 2);
  for (std::size_t l = 1; l < 3; ++l)
    CHECK(max_abs_diff(init.blocks[l], init.blocks[0]) < 1e-9);
  for (std::size_t k = 0; k < 10; ++k) {
    double gap = 0.0;
    for (std::size_t c = 0; c < 2; ++c)
      gap += std::pow(init.blocks[0](k, c) - init.blocks[1](k, c), 2);
    CHECK(std::sqrt(gap) < 1e-9);
  }
}

TEST_CASE("averaged init for one modality is plain cmds") {
  Rng rng(69);
  const OmnibusProblem problem = oracle::random_problem(rng, 8, 1, 2);
  const Configuration init = averaged_procrustes_init(problem, 2);
  DenseMatrix expected = cmds(problem.modality(0), 2);
  center_columns(expected);
  CHECK(max_abs_diff(init.blocks[0], expected) < 1e-9);
}

TEST_CASE("averaged init starts with less commensurability than a random start") {
  Rng rng(70);
  const std::size_t n = 20, m = 3;
  const OmnibusProblem problem = oracle::random_problem(rng, n, m, 2);
  const Configuration init = averaged_procrustes_init(problem, 2);

  const auto commensurability = [&](const Configuration& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          double pair = 0.0;
          for (std::size_t col = 0; col < 2; ++col)
            pair += std::pow(c.blocks[i](k, col) - c.blocks[j](k, col), 2);
          s += pair;
        }
    return s;
  };

  const double scale = frobenius_norm(init);
  const Configuration random =
      oracle::random_configuration(rng, n, m, 2, scale / std::sqrt(double(n * m * 2)));
  CHECK(commensurability(init) < commensurability(random));
}

TEST_CASE("imputed omnibus init recovers stacked copies of realizable data") {
  Rng rng(71);
  const DenseMatrix points = oracle::random_matrix(rng, 9, 2, 2.0);
  const DenseMatrix delta = euclidean_distance_matrix(points);
  OmnibusProblem problem({delta, delta});
  const Configuration init = imputed_omnibus_init(problem, 2);

  // The imputed omnibus of identical realizable modalities is itself
  // realizable by stacking, so the embedded distances must reproduce it.
  for (std::size_t l = 0; l < 2; ++l)
    CHECK(max_abs_diff(euclidean_distance_matrix(init.blocks[l]), delta) < 1e-6);
  for (std::size_t k = 0; k < 9; ++k) {
    double gap = 0.0;
    for (std::size_t c = 0; c < 2; ++c)
      gap += std::pow(init.blocks[0](k, c) - init.blocks[1](k, c), 2);
    CHECK(std::sqrt(gap) < 1e-6);
  }
}

TEST_CASE("imputed omnibus init for one modality is cmds") {
  Rng rng(72);
  const OmnibusProblem problem = oracle::random_problem(rng, 7, 1, 2);
  const Configuration init = imputed_omnibus_init(problem, 2);
  CHECK(max_abs_diff(init.blocks[0], cmds(problem.modality(0), 2)) < 1e-12);
}

TEST_CASE("imputed omnibus init enforces the dense cap") {
  Rng rng(73);
  const OmnibusProblem problem = oracle::random_problem(rng, 8, 2, 2);
  CHECK_THROWS_AS(imputed_omnibus_init(problem, 2, 10), std::invalid_argument);
}

TEST_CASE("every init is column centered per block") {
  Rng rng(74);
  const OmnibusProblem problem = oracle::random_problem(rng, 11, 3, 2);
  for (const Configuration& init :
       {averaged_procrustes_init(problem, 2), imputed_omnibus_init(problem, 2)})
    for (const auto& block : init.blocks)
      for (double mean : column_means(block)) CHECK(std::abs(mean) < 1e-10);
}

TEST_CASE("init kinds are deterministic across runs") {
  Rng rng(75);
  const OmnibusProblem problem = oracle::random_problem(rng, 10, 2, 2);
  const Configuration a = averaged_procrustes_init(problem, 2);
  const Configuration b = averaged_procrustes_init(problem, 2);
  CHECK(max_abs_diff(a, b) == 0.0);
  const Configuration c = imputed_omnibus_init(problem, 2);
  const Configuration d = imputed_omnibus_init(problem, 2);
  CHECK(max_abs_diff(c, d) == 0.0);
}
