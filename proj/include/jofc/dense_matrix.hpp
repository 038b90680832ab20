#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jofc {

/// Dense row-major matrix of doubles. The only matrix type in the library;
/// symmetric/triangular structure is a convention of the caller, not the type.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix ones(std::size_t rows, std::size_t cols) {
    return DenseMatrix(rows, cols, 1.0);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  bool operator==(const DenseMatrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

DenseMatrix transpose(const DenseMatrix& a);

/// c = a*b without allocating; c must already have the right shape.
void multiply_into(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);

double frobenius_norm(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

bool all_finite(const DenseMatrix& a);
bool is_square(const DenseMatrix& a);

/// Largest |a_ij - a_ji| over all pairs; 0 for empty/1x1.
double symmetry_gap(const DenseMatrix& a);

/// Subtract the column mean from every column.
void center_columns(DenseMatrix& a);
std::vector<double> column_means(const DenseMatrix& a);

}  // namespace jofc
