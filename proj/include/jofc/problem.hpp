#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jofc/dense_matrix.hpp"

namespace jofc {

using DissimilarityMatrix = DenseMatrix;

/// m dissimilarity matrices over the same n objects. Cross-modality entries
/// are implicit: matched pairs dissimilarity 0, everything else missing.
class OmnibusProblem {
public:
  explicit OmnibusProblem(std::vector<DissimilarityMatrix> modalities);

  std::size_t modality_count() const { return modalities_.size(); }
  std::size_t object_count() const { return n_; }
  const DissimilarityMatrix& modality(std::size_t i) const { return modalities_[i]; }

  /// Copy with each modality rescaled to unit Frobenius norm (zero matrices
  /// are left untouched).
  OmnibusProblem normalized() const;

  /// Restriction to the first `count` objects of every modality.
  OmnibusProblem leading_objects(std::size_t count) const;

private:
  std::vector<DissimilarityMatrix> modalities_;
  std::size_t n_ = 0;
};

/// Stacked embedding: one n x d block per modality.
struct Configuration {
  std::vector<DenseMatrix> blocks;

  std::size_t modality_count() const { return blocks.size(); }
  std::size_t object_count() const { return blocks.empty() ? 0 : blocks.front().rows(); }
  std::size_t dim() const { return blocks.empty() ? 0 : blocks.front().cols(); }

  DenseMatrix stacked() const;
  static Configuration from_stacked(const DenseMatrix& x, std::size_t m);
};

double frobenius_norm(const Configuration& c);
double max_abs_diff(const Configuration& a, const Configuration& b);

enum class Termination { converged, max_iterations };

struct EmbeddingResult {
  Configuration config;
  std::vector<double> stress_trace;             // sigma(X_0), sigma(X_1), ...
  std::vector<double> normalized_stress_trace;  // stress / C(nm, 2)
  std::size_t iterations = 0;
  Termination terminated = Termination::converged;
  std::vector<double> step_seconds;       // wall time of each Guttman transform
  std::vector<Configuration> config_trace;  // filled only when requested

  double final_stress() const { return stress_trace.back(); }
  double final_normalized_stress() const { return normalized_stress_trace.back(); }
};

enum class InitKind { imputed_cmds, averaged_procrustes, provided };

struct SolveOptions {
  std::size_t dim = 2;
  double eps = 1e-6;  // terminate when the normalized stress decrease drops below this
  std::size_t max_iterations = 1000;
  bool parallel = false;
  InitKind init = InitKind::averaged_procrustes;
  std::optional<Configuration> init_config;  // used when init == provided
  bool normalize = false;                    // pre-scale each modality to ||.||_F = 1
  bool keep_config_trace = false;
  std::size_t dense_cap = 4096;  // guard for mn x mn materializations
};

}  // namespace jofc
