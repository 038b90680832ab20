#pragma once

#include <vector>

#include "jofc/problem.hpp"
#include "jofc/weights.hpp"

namespace jofc {

/// Raw stress of a configuration: weighted within-modality fidelity residuals
/// plus weighted matched-pair commensurability distances. Only the
/// m*C(n,2) + C(m,2)*n relevant interpoint distances are formed.
double raw_stress(const Configuration& config, const OmnibusProblem& problem,
                  const WeightSpec& spec, bool parallel = false);

/// Number of weighted residual terms backing the normalized stress: C(nm, 2).
double stress_pair_count(std::size_t m, std::size_t n);

/// Throws std::invalid_argument unless the configuration, problem and weight
/// spec agree on m, n and block shapes.
void require_consistent_shapes(const Configuration& config,
                               const OmnibusProblem& problem, const WeightSpec& spec);

/// The m within-modality majorization matrices. Off-diagonal entries are
/// -a_l * Delta_l(j,k) / d_jk(X^l) with a zero contribution where the
/// configuration distance vanishes; diagonals make every row sum exactly zero.
std::vector<DenseMatrix> b_blocks(const Configuration& config,
                                  const OmnibusProblem& problem,
                                  const WeightSpec& spec);

}  // namespace jofc
