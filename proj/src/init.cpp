#include "jofc/init.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include "jofc/distance.hpp"
#include "jofc/linalg.hpp"

namespace jofc {

namespace {

// Full Jacobi below this size; shifted subspace iteration above. Both honor
// the same residual tolerance, but Jacobi's O(n^3) sweeps are unusable at the
// omnibus sizes the benchmarks initialize from.
constexpr std::size_t kCmdsJacobiLimit = 320;

}  // namespace

DenseMatrix cmds(const DenseMatrix& delta, std::size_t d) {
  if (!is_square(delta)) throw std::invalid_argument("cmds: matrix not square");
  const std::size_t n = delta.rows();
  if (d < 1 || d > n) throw std::invalid_argument("cmds: dimension out of range");

  DenseMatrix squared(n, n);
  for (std::size_t i = 0; i < squared.size(); ++i)
    squared.data()[i] = delta.data()[i] * delta.data()[i];
  const DenseMatrix p = double_center(squared);

  const auto pairs = (n <= kCmdsJacobiLimit) ? symmetric_top_eigenpairs(p, d)
                                             : symmetric_top_eigenpairs_subspace(p, d);

  DenseMatrix x(n, d);
  for (std::size_t c = 0; c < d; ++c) {
    const double lambda = std::max(pairs[c].value, 0.0);  // Torgerson clamp
    const double scale = std::sqrt(lambda);
    for (std::size_t i = 0; i < n; ++i) x(i, c) = scale * pairs[c].vector[i];
  }
  center_columns(x);
  return x;
}

DenseMatrix orthogonal_procrustes(const DenseMatrix& source, const DenseMatrix& target) {
  if (source.rows() != target.rows() || source.cols() != target.cols())
    throw std::invalid_argument("orthogonal_procrustes: shape mismatch");
  DenseMatrix s = source, t = target;
  center_columns(s);
  center_columns(t);

  const DenseMatrix cross = transpose(s) * t;  // d x d
  const Svd svd = svd_small(cross);
  const DenseMatrix rotation = svd.u * transpose(svd.v);
  return s * rotation;
}

Configuration averaged_procrustes_init(const OmnibusProblem& problem, std::size_t d,
                                       bool parallel) {
  const std::size_t m = problem.modality_count();
  const std::size_t n = problem.object_count();

  DenseMatrix average(n, n);
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t i = 0; i < average.size(); ++i)
      average.data()[i] += problem.modality(l).data()[i];
  for (std::size_t i = 0; i < average.size(); ++i)
    average.data()[i] /= static_cast<double>(m);

  DenseMatrix anchor = cmds(average, d);
  center_columns(anchor);

  Configuration init;
  init.blocks.assign(m, DenseMatrix());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t l = 0; l < m; ++l) {
    try {
      DenseMatrix xi = cmds(problem.modality(l), d);
      center_columns(xi);
      init.blocks[l] = orthogonal_procrustes(xi, anchor);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return init;
}

Configuration imputed_omnibus_init(const OmnibusProblem& problem, std::size_t d,
                                   std::size_t dense_cap) {
  const std::size_t m = problem.modality_count();
  const std::size_t n = problem.object_count();
  if (m * n > dense_cap)
    throw std::invalid_argument("imputed_omnibus_init: mn exceeds the dense cap");

  // Off-blocks (Delta_i + Delta_j)/2; their diagonals stay 0 because the
  // modalities are hollow, which is exactly the matched-pair convention.
  DenseMatrix omnibus(m * n, m * n);
  for (std::size_t bi = 0; bi < m; ++bi)
    for (std::size_t bj = 0; bj < m; ++bj) {
      const DenseMatrix& a = problem.modality(bi);
      const DenseMatrix& b = problem.modality(bj);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          omnibus(bi * n + i, bj * n + j) =
              (bi == bj) ? a(i, j) : 0.5 * (a(i, j) + b(i, j));
    }

  Configuration init = Configuration::from_stacked(cmds(omnibus, d), m);
  // cmds centers the stacked rows; recenter per block (a per-block
  // translation, invisible to the Guttman transform since B_l 1 = 0).
  for (auto& block : init.blocks) center_columns(block);
  return init;
}

}  // namespace jofc
