#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "jofc/dense_matrix.hpp"

namespace jofc {

/// Thrown when an iterative kernel fails to reach its tolerance, or a solve
/// hits a singular system. The CLI maps it to exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit norm
};

/// Top-k eigenpairs of a symmetric matrix, descending by eigenvalue.
/// Cyclic Jacobi sweeps (cap 100, off-diagonal tolerance 1e-12*||S||_F);
/// eigenvector signs are fixed so the largest-magnitude component is positive.
std::vector<EigenPair> symmetric_top_eigenpairs(const DenseMatrix& s, std::size_t k);

/// Full spectrum via the same Jacobi kernel, descending.
std::vector<EigenPair> symmetric_eigen_all(const DenseMatrix& s);

/// Top-k eigenpairs by *algebraic* value via shifted orthogonal iteration with
/// Rayleigh-Ritz extraction. Same residual contract as the Jacobi route
/// (||Sv - lambda v|| <= 1e-8*||S||_F) but O(n^2 k) per sweep, so it stays
/// usable where full Jacobi would not. Deterministic (internally seeded).
std::vector<EigenPair> symmetric_top_eigenpairs_subspace(const DenseMatrix& s,
                                                         std::size_t k);

/// Moore-Penrose pseudoinverse of a symmetric matrix via full eigendecomposition.
/// Brute-force oracle: used by tests and the dense reference path only.
DenseMatrix pseudoinverse_oracle(const DenseMatrix& m);

/// Inverse of a small square matrix by partial-pivot Gaussian elimination.
DenseMatrix invert_small(const DenseMatrix& a);

struct Svd {
  DenseMatrix u;              // square, orthogonal
  DenseMatrix v;              // square, orthogonal
  std::vector<double> sigma;  // descending, >= 0
};

/// One-sided Jacobi SVD of a small square matrix; rank-deficient inputs get a
/// deterministic orthogonal completion of U.
Svd svd_small(const DenseMatrix& a);

}  // namespace jofc
