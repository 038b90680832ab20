#include "jofc/stress.hpp"

#include <cmath>
#include <stdexcept>

namespace jofc {

void require_consistent_shapes(const Configuration& config,
                               const OmnibusProblem& problem, const WeightSpec& spec) {
  spec.validate(problem.modality_count());
  if (config.modality_count() != problem.modality_count())
    throw std::invalid_argument("configuration/problem modality count mismatch");
  if (config.object_count() != problem.object_count())
    throw std::invalid_argument("configuration/problem object count mismatch");
  for (const auto& block : config.blocks)
    if (block.rows() != config.object_count() || block.cols() != config.dim())
      throw std::invalid_argument("configuration blocks have inconsistent shapes");
}

namespace {

double row_distance(const DenseMatrix& a, std::size_t i, const DenseMatrix& b,
                    std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const double diff = a(i, k) - b(j, k);
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace

double stress_pair_count(std::size_t m, std::size_t n) {
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  return mn * (mn - 1.0) / 2.0;
}

double raw_stress(const Configuration& config, const OmnibusProblem& problem,
                  const WeightSpec& spec, bool parallel) {
  require_consistent_shapes(config, problem, spec);
  const std::size_t m = problem.modality_count();
  const std::size_t n = problem.object_count();

  double fidelity = 0.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : fidelity) if (parallel)
  for (std::size_t flat = 0; flat < m * n; ++flat) {
    const std::size_t l = flat / n;
    const std::size_t i = flat % n;
    const DenseMatrix& delta = problem.modality(l);
    const DenseMatrix& block = config.blocks[l];
    const double a = spec.within_weight(l);
    double local = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double resid = delta(i, j) - row_distance(block, i, block, j);
      local += resid * resid;
    }
    fidelity += a * local;
  }

  double commensurability = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double w = spec.cross_weight(i, j);
      double pairs = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double d = row_distance(config.blocks[i], k, config.blocks[j], k);
        pairs += d * d;
      }
      commensurability += w * pairs;
    }

  return fidelity + commensurability;
}

std::vector<DenseMatrix> b_blocks(const Configuration& config,
                                  const OmnibusProblem& problem,
                                  const WeightSpec& spec) {
  require_consistent_shapes(config, problem, spec);
  const std::size_t m = problem.modality_count();
  const std::size_t n = problem.object_count();

  std::vector<DenseMatrix> blocks(m, DenseMatrix(n, n));
  for (std::size_t l = 0; l < m; ++l) {
    const DenseMatrix& delta = problem.modality(l);
    const DenseMatrix& block = config.blocks[l];
    const double a = spec.within_weight(l);
    DenseMatrix& b = blocks[l];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dist = row_distance(block, i, block, j);
        const double entry = (dist != 0.0) ? -a * delta(i, j) / dist : 0.0;
        b(i, j) = entry;
        b(j, i) = entry;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      double row_sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) row_sum += b(i, j);
      b(i, i) = -row_sum;
    }
  }
  return blocks;
}

}  // namespace jofc
