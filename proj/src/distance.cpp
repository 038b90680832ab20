#include "jofc/distance.hpp"

#include <cmath>
#include <stdexcept>

namespace jofc {

DenseMatrix euclidean_distance_matrix(const DenseMatrix& x, bool parallel) {
  if (!all_finite(x))
    throw std::invalid_argument("euclidean_distance_matrix: non-finite input");
  const std::size_t n = x.rows(), d = x.cols();
  DenseMatrix out(n, n);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = x.data() + i * d;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* xj = x.data() + j * d;
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = xi[k] - xj[k];
        s += diff * diff;
      }
      const double dist = std::sqrt(s);
      out(i, j) = dist;
      out(j, i) = dist;
    }
  }
  return out;
}

DenseMatrix double_center(const DenseMatrix& m) {
  if (!is_square(m)) throw std::invalid_argument("double_center: matrix not square");
  const std::size_t n = m.rows();
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> row_mean(n, 0.0), col_mean(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      row_mean[i] += m(i, j);
      col_mean[j] += m(i, j);
      total += m(i, j);
    }
  for (double& v : row_mean) v *= inv_n;
  for (double& v : col_mean) v *= inv_n;
  total *= inv_n * inv_n;

  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = -0.5 * (m(i, j) - row_mean[i] - col_mean[j] + total);
  return out;
}

}  // namespace jofc
