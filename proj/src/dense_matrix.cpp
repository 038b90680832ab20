#include "jofc/dense_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace jofc {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b);
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b);
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols());
  multiply_into(a, b, c);
  return c;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] *= s;
  return c;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

void multiply_into(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  if (c.rows() != a.rows() || c.cols() != b.cols())
    throw std::invalid_argument("matrix product output shape mismatch");
  const std::size_t n = a.rows(), k = a.cols(), p = b.cols();
  // ikj order keeps the inner loop contiguous in b and c.
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = c.data() + i * p;
    for (std::size_t j = 0; j < p; ++j) ci[j] = 0.0;
    const double* ai = a.data() + i * k;
    for (std::size_t l = 0; l < k; ++l) {
      const double ail = ai[l];
      if (ail == 0.0) continue;
      const double* bl = b.data() + l * p;
      for (std::size_t j = 0; j < p; ++j) ci[j] += ail * bl[j];
    }
  }
}

double frobenius_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * a.data()[i];
  return std::sqrt(s);
}

double max_abs(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a.data()[i]));
  return s;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s = std::max(s, std::abs(a.data()[i] - b.data()[i]));
  return s;
}

bool all_finite(const DenseMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!std::isfinite(a.data()[i])) return false;
  return true;
}

bool is_square(const DenseMatrix& a) { return a.rows() == a.cols(); }

double symmetry_gap(const DenseMatrix& a) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      gap = std::max(gap, std::abs(a(i, j) - a(j, i)));
  return gap;
}

std::vector<double> column_means(const DenseMatrix& a) {
  std::vector<double> mean(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) mean[j] += a(i, j);
  for (double& v : mean) v /= static_cast<double>(a.rows());
  return mean;
}

void center_columns(DenseMatrix& a) {
  if (a.rows() == 0) return;
  const std::vector<double> mean = column_means(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= mean[j];
}

}  // namespace jofc
