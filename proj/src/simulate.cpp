#include "jofc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jofc/distance.hpp"
#include "jofc/rng.hpp"

namespace jofc {

namespace {

DenseMatrix gaussian_cloud(Rng& rng, std::size_t n, std::size_t dim, double mean,
                           double sd) {
  DenseMatrix y(n, dim);
  for (std::size_t i = 0; i < y.size(); ++i) y.data()[i] = mean + sd * rng.normal();
  return y;
}

double entry_range(const DenseMatrix& y) {
  double lo = y.data()[0], hi = y.data()[0];
  for (std::size_t i = 0; i < y.size(); ++i) {
    lo = std::min(lo, y.data()[i]);
    hi = std::max(hi, y.data()[i]);
  }
  return hi - lo;
}

DenseMatrix jittered(Rng& rng, const DenseMatrix& y, double amplitude) {
  DenseMatrix out = y;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] += rng.uniform(-amplitude, amplitude);
  return out;
}

SimulatedProblem generate(std::size_t n, std::size_t m, std::size_t n_anom,
                          std::size_t dim, std::uint64_t seed) {
  if (n < 2 || m < 1 || dim < 1)
    throw std::invalid_argument("generate: n >= 2, m >= 1, dim >= 1 required");
  if (n_anom > n) throw std::invalid_argument("generate: n_anom exceeds n");

  Rng rng(seed);
  const DenseMatrix latent = gaussian_cloud(rng, n, dim, 5.0, 1.0);
  const double amplitude = entry_range(latent) / 50.0;

  SimulatedProblem sim;
  sim.modalities.reserve(m);
  const std::size_t regular = (n_anom > 0) ? m - 1 : m;
  for (std::size_t i = 0; i < regular; ++i)
    sim.modalities.push_back(euclidean_distance_matrix(jittered(rng, latent, amplitude)));

  if (n_anom > 0) {
    DenseMatrix shifted = latent;
    for (std::size_t r = 0; r < n_anom; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        shifted(r, c) = 8.0 + std::sqrt(2.0) * rng.normal();
    sim.modalities.push_back(euclidean_distance_matrix(jittered(rng, shifted, amplitude)));
    sim.anomalies.resize(n_anom);
    for (std::size_t r = 0; r < n_anom; ++r) sim.anomalies[r] = r;
  }

  sim.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) sim.labels[i] = static_cast<int>(i);
  return sim;
}

}  // namespace

SimulatedProblem generate_matched(std::size_t n, std::size_t m, std::size_t dim,
                                  std::uint64_t seed) {
  return generate(n, m, 0, dim, seed);
}

SimulatedProblem generate_anomaly(std::size_t n, std::size_t m, std::size_t n_anom,
                                  std::size_t dim, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("generate_anomaly: m >= 1 required");
  return generate(n, m, n_anom, dim, seed);
}

}  // namespace jofc
