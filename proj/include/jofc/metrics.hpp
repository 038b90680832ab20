#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jofc/problem.hpp"

namespace jofc {

/// Lloyd's k-means from k-means++ style seeding; runs to an assignment
/// fixpoint or `max_iterations`. Deterministic for a fixed seed.
std::vector<int> kmeans(const DenseMatrix& points, std::size_t k, std::uint64_t seed,
                        std::size_t max_iterations = 100);

/// Within-cluster sum of squared distances for a labeling.
double kmeans_objective(const DenseMatrix& points, std::span<const int> labels);

/// Chance-corrected agreement of two labelings (permutation model).
double adjusted_rand_index(std::span<const int> labels_a, std::span<const int> labels_b);

/// Mean over anomalous objects of the mean pairwise distance among the m
/// embedded copies of the object, divided by the same mean over the
/// non-anomalous objects. Returns +infinity (with a warning on stderr) when
/// the denominator vanishes but the numerator does not.
double confusion_ratio(const Configuration& config,
                       const std::vector<std::size_t>& anomalies);

/// ||X_final - X_k||_F / ||X_final||_F from a kept configuration trace.
double relative_error_trace(const EmbeddingResult& result, std::size_t k);

}  // namespace jofc
