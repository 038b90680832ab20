#pragma once

#include "jofc/problem.hpp"

namespace jofc {

/// Classical (Torgerson) MDS: square entries, double-center, scale the top-d
/// eigenvectors by sqrt of the eigenvalues, clamping negative ones to zero.
/// Output columns have zero mean.
DenseMatrix cmds(const DenseMatrix& delta, std::size_t d);

/// Best rotation/reflection of `source` onto `target` in Frobenius norm:
/// source * U * V^T with U S V^T the SVD of source^T target. Both inputs are
/// column-centered internally.
DenseMatrix orthogonal_procrustes(const DenseMatrix& source, const DenseMatrix& target);

/// cMDS of the modality-average dissimilarity, then each modality's own cMDS
/// rotated onto it.
Configuration averaged_procrustes_init(const OmnibusProblem& problem, std::size_t d,
                                       bool parallel = false);

/// cMDS of the mn x mn omnibus with off-blocks imputed as (Delta_i+Delta_j)/2.
Configuration imputed_omnibus_init(const OmnibusProblem& problem, std::size_t d,
                                   std::size_t dense_cap = 4096);

}  // namespace jofc
