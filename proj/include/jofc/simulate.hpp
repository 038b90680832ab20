#pragma once

#include <cstdint>
#include <vector>

#include "jofc/problem.hpp"

namespace jofc {

struct SimulatedProblem {
  std::vector<DissimilarityMatrix> modalities;
  std::vector<int> labels;             // object index, the ground-truth cluster id
  std::vector<std::size_t> anomalies;  // empty in the matched setting

  OmnibusProblem problem() const { return OmnibusProblem(modalities); }
};

/// Matched setting: latent rows Gaussian(mean 5, identity) in `dim`
/// dimensions; each modality adds independent Uniform(-z/50, z/50) jitter,
/// z the global range of the latent entries. Pure function of the arguments.
SimulatedProblem generate_matched(std::size_t n, std::size_t m, std::size_t dim,
                                  std::uint64_t seed);

/// Anomaly setting: modalities 1..m-1 as in the matched setting; the last one
/// replaces the first n_anom latent rows with Gaussian(mean 8, 2*identity)
/// draws before jittering.
SimulatedProblem generate_anomaly(std::size_t n, std::size_t m, std::size_t n_anom,
                                  std::size_t dim, std::uint64_t seed);

}  // namespace jofc
