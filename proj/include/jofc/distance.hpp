#pragma once

#include "jofc/dense_matrix.hpp"

namespace jofc {

/// Pairwise Euclidean distances between the rows of x; symmetric, hollow.
DenseMatrix euclidean_distance_matrix(const DenseMatrix& x, bool parallel = false);

/// -1/2 (I - J/n) M (I - J/n). Rows and columns of the result sum to zero.
DenseMatrix double_center(const DenseMatrix& m);

}  // namespace jofc
