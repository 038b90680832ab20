#pragma once

#include <cstdint>
#include <vector>

#include "jofc/problem.hpp"

namespace jofc {

/// Per-modality dissimilarities between one new object and the n in-sample
/// objects. Out-of-sample embedding is derived for the uniform weight only.
struct OosDissimilarity {
  std::vector<std::vector<double>> deltas;  // m vectors of length n

  std::size_t modality_count() const { return deltas.size(); }
  std::size_t object_count() const { return deltas.empty() ? 0 : deltas.front().size(); }
};

struct OosResult {
  DenseMatrix y;  // m x d, row i is the new object's position in modality i
  std::vector<double> stress_trace;
  std::size_t iterations = 0;
  Termination terminated = Termination::converged;
};

struct OosOptions {
  double eps = 1e-6;  // decrease tolerance per residual term
  std::size_t max_iterations = 1000;
};

/// Restricted raw stress of the new object's rows y against the frozen
/// configuration.
double oos_stress(const DenseMatrix& y, const Configuration& x,
                  const OosDissimilarity& deltas, double w);

/// One fast Guttman transform of y: O(nmd) via the closed-form inverse of the
/// out-of-sample Laplacian corner.
DenseMatrix oos_step_fast(const DenseMatrix& y, const Configuration& x,
                          const OosDissimilarity& deltas, double w);

/// Dense counterpart: materializes the out-of-sample weight matrix, slices the
/// Laplacian and B blocks, and applies the block update with a numerically
/// computed pseudoinverse. Test/benchmark path.
DenseMatrix oos_step_reference(const DenseMatrix& y, const Configuration& x,
                               const OosDissimilarity& deltas, double w);

/// Iterate the fast transform from a seeded random start (rows scaled to the
/// RMS row norm of x) until the stress decrease per residual term drops below
/// options.eps.
OosResult oos_embed(const Configuration& x, const OosDissimilarity& deltas, double w,
                    const OosOptions& options, std::uint64_t seed);

/// Out-of-sample weight matrix over [in-sample rows | y rows]; test oracle.
DenseMatrix dense_oos_weight_matrix(std::size_t m, std::size_t n, double w);

}  // namespace jofc
