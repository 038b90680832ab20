// Independent brute-force oracles shared across the test suites. Everything
// here recomputes from first principles and stays off the library's fast
// paths on purpose.
#pragma once

#include <cmath>
#include <vector>

#include "jofc/dense_matrix.hpp"
#include "jofc/problem.hpp"
#include "jofc/rng.hpp"
#include "jofc/weights.hpp"

namespace oracle {

using jofc::Configuration;
using jofc::DenseMatrix;
using jofc::OmnibusProblem;
using jofc::WeightSpec;

inline double row_distance(const DenseMatrix& x, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    const double diff = x(i, c) - x(j, c);
    s += diff * diff;
  }
  return std::sqrt(s);
}

/// Brute-force pairwise distance matrix via the plain double loop.
inline DenseMatrix distance_matrix(const DenseMatrix& x) {
  DenseMatrix out(x.rows(), x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.rows(); ++j) out(i, j) = row_distance(x, i, j);
  return out;
}

/// sigma(X) summed pair by pair over the dense omnibus:
/// sum_{p<q} W_pq (Delta_pq - d_pq(X))^2.
inline double dense_omnibus_stress(const DenseMatrix& weights, const DenseMatrix& delta,
                                   const DenseMatrix& x_stacked) {
  double stress = 0.0;
  for (std::size_t p = 0; p < weights.rows(); ++p)
    for (std::size_t q = p + 1; q < weights.cols(); ++q) {
      const double resid = delta(p, q) - row_distance(x_stacked, p, q);
      stress += weights(p, q) * resid * resid;
    }
  return stress;
}

/// Worst violation of the four Moore-Penrose conditions, relative to
/// ||M||_F-scaled tolerances.
inline double moore_penrose_violation(const DenseMatrix& m, const DenseMatrix& pinv) {
  using jofc::max_abs_diff;
  const DenseMatrix mpm = m * pinv * m;
  const DenseMatrix pmp = pinv * m * pinv;
  const DenseMatrix mp = m * pinv;
  const DenseMatrix pm = pinv * m;
  double worst = max_abs_diff(mpm, m);
  worst = std::max(worst, max_abs_diff(pmp, pinv));
  worst = std::max(worst, max_abs_diff(mp, jofc::transpose(mp)));
  worst = std::max(worst, max_abs_diff(pm, jofc::transpose(pm)));
  return worst;
}

inline DenseMatrix random_matrix(jofc::Rng& rng, std::size_t rows, std::size_t cols,
                                 double scale = 1.0) {
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = scale * rng.normal();
  return m;
}

inline DenseMatrix random_symmetric(jofc::Rng& rng, std::size_t n, double scale = 1.0) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = scale * rng.normal();
      m(i, j) = m(j, i) = v;
    }
  return m;
}

/// Random orthogonal matrix from Gram-Schmidt on a Gaussian draw.
inline DenseMatrix random_orthogonal(jofc::Rng& rng, std::size_t n) {
  DenseMatrix q = random_matrix(rng, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += q(r, i) * q(r, j);
      for (std::size_t r = 0; r < n; ++r) q(r, j) -= dot * q(r, i);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += q(r, j) * q(r, j);
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) q(r, j) /= norm;
  }
  return q;
}

/// Random dissimilarity problem: distance matrices of jittered Gaussian
/// clouds, so every instance is symmetric, hollow and nonnegative.
inline OmnibusProblem random_problem(jofc::Rng& rng, std::size_t n, std::size_t m,
                                     std::size_t dim) {
  std::vector<DenseMatrix> modalities;
  for (std::size_t l = 0; l < m; ++l)
    modalities.push_back(distance_matrix(random_matrix(rng, n, dim, 2.0)));
  return OmnibusProblem(std::move(modalities));
}

inline Configuration random_configuration(jofc::Rng& rng, std::size_t n, std::size_t m,
                                          std::size_t d, double scale = 1.0) {
  Configuration c;
  for (std::size_t l = 0; l < m; ++l) c.blocks.push_back(random_matrix(rng, n, d, scale));
  return c;
}

/// The three weight families on a common (m, n, w) grid point.
inline std::vector<WeightSpec> weight_specs_for(std::size_t m, double w) {
  std::vector<WeightSpec> specs;
  specs.push_back(WeightSpec::uniform(w));

  DenseMatrix general(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      general(i, j) = (i == j) ? w * (1.0 + 0.1 * static_cast<double>(i))
                               : w * (1.0 + 0.25 * std::abs(static_cast<double>(i) -
                                                            static_cast<double>(j)));
  specs.push_back(WeightSpec::general(std::move(general)));

  std::vector<double> within(m);
  for (std::size_t i = 0; i < m; ++i) within[i] = w * (1.0 + 0.5 * static_cast<double>(i));
  specs.push_back(WeightSpec::product(std::move(within), 1.5));
  return specs;
}

}  // namespace oracle
