#pragma once

#include "jofc/problem.hpp"
#include "jofc/stress.hpp"
#include "jofc/weights.hpp"

namespace jofc {

/// One fast Guttman transform: per-modality products B_l X^(l) (computed
/// row-wise, B never materialized, in parallel when asked) mixed by the
/// closed-form m x m inverse. Output blocks are column-centered.
Configuration guttman_step_fast(const Configuration& config,
                                const OmnibusProblem& problem, const WeightSpec& spec,
                                bool parallel = false);

/// One dense-reference Guttman transform: materializes the mn x mn weight
/// matrix, the omnibus B, and the exact algebraic pseudoinverse, then applies
/// L^+ B X. Serial; kept for tests and benchmarks.
Configuration guttman_step_reference(const Configuration& config,
                                     const OmnibusProblem& problem,
                                     const WeightSpec& spec,
                                     std::size_t dense_cap = 4096);

/// fJOFC: fast majorization from the chosen init until the normalized stress
/// decrease falls below options.eps or the iteration cap.
EmbeddingResult fjofc_embed(const OmnibusProblem& problem, const WeightSpec& spec,
                            const SolveOptions& options);

/// Reference solver with the dense per-iteration transform; same termination
/// contract. Init defaults to the imputed omnibus embedding.
EmbeddingResult jofc_embed_reference(const OmnibusProblem& problem,
                                     const WeightSpec& spec,
                                     const SolveOptions& options);

// --- dense helpers shared by the reference path and the test oracles ---

/// mn x mn omnibus dissimilarity: Delta_l on the diagonal blocks, matched
/// pairs 0, missing entries stored as 0 (their weight is 0).
DenseMatrix dense_omnibus_delta(const OmnibusProblem& problem);

/// Omnibus majorization matrix from an explicit weight matrix: entries
/// -W_ij Delta_ij / d_ij(X) with the zero-distance guard, diagonal set to the
/// negated row sum.
DenseMatrix dense_b_matrix(const DenseMatrix& weights, const DenseMatrix& delta,
                           const DenseMatrix& x_stacked);

}  // namespace jofc
