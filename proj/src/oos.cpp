#include "jofc/oos.hpp"

#include <cmath>
#include <stdexcept>

#include "jofc/linalg.hpp"
#include "jofc/rng.hpp"

namespace jofc {

namespace {

void require_consistent(const DenseMatrix& y, const Configuration& x,
                        const OosDissimilarity& deltas, double w) {
  if (!(w > 0.0)) throw std::invalid_argument("oos: w must be strictly positive");
  const std::size_t m = x.modality_count();
  const std::size_t n = x.object_count();
  if (deltas.modality_count() != m)
    throw std::invalid_argument("oos: delta count does not match the configuration");
  for (const auto& delta : deltas.deltas) {
    if (delta.size() != n)
      throw std::invalid_argument("oos: delta length does not match the configuration");
    for (double v : delta)
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("oos: deltas must be finite and nonnegative");
  }
  if (y.rows() != m || y.cols() != x.dim())
    throw std::invalid_argument("oos: y must be m x d");
}

double point_distance(const DenseMatrix& block, std::size_t row, const double* point,
                      std::size_t d) {
  double s = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    const double diff = block(row, c) - point[c];
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace

double oos_stress(const DenseMatrix& y, const Configuration& x,
                  const OosDissimilarity& deltas, double w) {
  require_consistent(y, x, deltas, w);
  const std::size_t m = x.modality_count();
  const std::size_t n = x.object_count();
  const std::size_t d = x.dim();

  double fidelity = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* yi = y.data() + i * d;
    for (std::size_t j = 0; j < n; ++j) {
      const double resid = deltas.deltas[i][j] - point_distance(x.blocks[i], j, yi, d);
      fidelity += resid * resid;
    }
  }

  double commensurability = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double diff = y(i, c) - y(j, c);
        s += diff * diff;
      }
      commensurability += s;
    }

  return fidelity + w * commensurability;
}

DenseMatrix oos_step_fast(const DenseMatrix& y, const Configuration& x,
                          const OosDissimilarity& deltas, double w) {
  require_consistent(y, x, deltas, w);
  const std::size_t m = x.modality_count();
  const std::size_t n = x.object_count();
  const std::size_t d = x.dim();
  const double nn = static_cast<double>(n);
  const double mw = static_cast<double>(m) * w;

  // xi_j = (1 - delta_j o 1/d)^T X^(j), psi_j = 1^T (delta_j o 1/d).
  DenseMatrix xi(m, d);
  std::vector<double> psi(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const DenseMatrix& block = x.blocks[j];
    const double* yj = y.data() + j * d;
    double* xij = xi.data() + j * d;
    for (std::size_t k = 0; k < n; ++k) {
      const double dist = point_distance(block, k, yj, d);
      const double ratio = (dist != 0.0) ? deltas.deltas[j][k] / dist : 0.0;
      psi[j] += ratio;
      const double coeff = 1.0 - ratio;
      for (std::size_t c = 0; c < d; ++c) xij[c] += coeff * block(k, c);
    }
  }

  std::vector<double> xi_sum(d, 0.0), psi_y_sum(d, 0.0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t c = 0; c < d; ++c) {
      xi_sum[c] += xi(j, c);
      psi_y_sum[c] += psi[j] * y(j, c);
    }

  const double direct = 1.0 / (nn + mw);
  const double spread = w / (nn * (nn + mw));
  DenseMatrix next(m, d);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t c = 0; c < d; ++c)
      next(j, c) = direct * (xi(j, c) + psi[j] * y(j, c)) +
                   spread * (xi_sum[c] + psi_y_sum[c]);
  return next;
}

DenseMatrix dense_oos_weight_matrix(std::size_t m, std::size_t n, double w) {
  const std::size_t total = m * n + m;
  DenseMatrix weights(total, total);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      weights(i * n + k, m * n + i) = 1.0;
      weights(m * n + i, i * n + k) = 1.0;
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) weights(m * n + i, m * n + j) = w;
  return weights;
}

DenseMatrix oos_step_reference(const DenseMatrix& y, const Configuration& x,
                               const OosDissimilarity& deltas, double w) {
  require_consistent(y, x, deltas, w);
  const std::size_t m = x.modality_count();
  const std::size_t n = x.object_count();
  const std::size_t d = x.dim();

  const DenseMatrix weights = dense_oos_weight_matrix(m, n, w);
  const std::size_t total = weights.rows();

  // Laplacian corner blocks for the y rows.
  DenseMatrix laplacian(total, total);
  for (std::size_t i = 0; i < total; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < total; ++j) {
      degree += weights(i, j);
      laplacian(i, j) = -weights(i, j);
    }
    laplacian(i, i) = degree;
  }
  DenseMatrix l12_t(m, m * n), l22(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m * n; ++j) l12_t(i, j) = laplacian(m * n + i, j);
    for (std::size_t j = 0; j < m; ++j) l22(i, j) = laplacian(m * n + i, m * n + j);
  }

  // B_12 columns: -delta_i o 1/d against the frozen in-sample rows; B_22 is
  // diag(psi).
  DenseMatrix b12_t(m, m * n);
  std::vector<double> psi(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* yi = y.data() + i * d;
    for (std::size_t k = 0; k < n; ++k) {
      const double dist = point_distance(x.blocks[i], k, yi, d);
      const double ratio = (dist != 0.0) ? deltas.deltas[i][k] / dist : 0.0;
      b12_t(i, i * n + k) = -ratio;
      psi[i] += ratio;
    }
  }

  const DenseMatrix l22_pinv = pseudoinverse_oracle(l22);
  const DenseMatrix stacked = x.stacked();

  const DenseMatrix rhs = b12_t - l12_t;  // (B_12^T - L_12^T)
  DenseMatrix first = l22_pinv * (rhs * stacked);
  DenseMatrix second(m, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < d; ++c) second(i, c) = psi[i] * y(i, c);
  return first + l22_pinv * second;
}

OosResult oos_embed(const Configuration& x, const OosDissimilarity& deltas, double w,
                    const OosOptions& options, std::uint64_t seed) {
  const std::size_t m = x.modality_count();
  const std::size_t n = x.object_count();
  const std::size_t d = x.dim();
  if (!(options.eps > 0.0)) throw std::invalid_argument("OosOptions: eps must be positive");

  // Start at Gaussian rows scaled to the RMS row norm of the frozen
  // configuration; a scale-matched start avoids early coincidences.
  double rms = 0.0;
  for (const auto& block : x.blocks) {
    const double f = frobenius_norm(block);
    rms += f * f;
  }
  rms = std::sqrt(rms / static_cast<double>(m * n));
  Rng rng(seed);
  DenseMatrix y(m, d);
  const double row_scale = rms / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < y.size(); ++i) y.data()[i] = row_scale * rng.normal();

  const double term_count =
      static_cast<double>(m * n) + 0.5 * static_cast<double>(m * (m - 1));

  OosResult result;
  result.y = std::move(y);
  double stress = oos_stress(result.y, x, deltas, w);
  if (!std::isfinite(stress))
    throw NumericalError("oos_embed: non-finite stress at the initial point");
  result.stress_trace.push_back(stress);

  result.terminated = Termination::max_iterations;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    DenseMatrix next = oos_step_fast(result.y, x, deltas, w);
    const double next_stress = oos_stress(next, x, deltas, w);
    if (!std::isfinite(next_stress))
      throw NumericalError("oos_embed: non-finite stress at iteration " +
                           std::to_string(it + 1));
    result.y = std::move(next);
    result.stress_trace.push_back(next_stress);
    ++result.iterations;

    const double decrease = (stress - next_stress) / term_count;
    stress = next_stress;
    if (decrease < options.eps) {
      result.terminated = Termination::converged;
      break;
    }
  }
  return result;
}

}  // namespace jofc
