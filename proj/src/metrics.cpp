#include "jofc/metrics.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <stdexcept>

#include "jofc/rng.hpp"

namespace jofc {

namespace {

double squared_distance(const DenseMatrix& points, std::size_t i,
                        const std::vector<double>& center) {
  double s = 0.0;
  for (std::size_t c = 0; c < points.cols(); ++c) {
    const double diff = points(i, c) - center[c];
    s += diff * diff;
  }
  return s;
}

// Greedy k-means++: every new center is the best of a handful of
// D^2-distributed candidates, judged by the resulting potential.
std::vector<std::vector<double>> seed_centers(const DenseMatrix& points, std::size_t k,
                                              Rng& rng) {
  const std::size_t n = points.rows(), d = points.cols();
  const std::size_t trials = 2 + static_cast<std::size_t>(std::log2(double(k) + 1.0));
  std::vector<std::vector<double>> centers;
  centers.reserve(k);

  std::vector<double> first(d);
  const std::size_t pick = rng.below(n);
  for (std::size_t c = 0; c < d; ++c) first[c] = points(pick, c);
  centers.push_back(std::move(first));

  std::vector<double> best(n, std::numeric_limits<double>::max());
  for (std::size_t i = 0; i < n; ++i)
    best[i] = squared_distance(points, i, centers.front());

  std::vector<double> candidate_gain(n);
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += best[i];

    std::size_t chosen = 0;
    double chosen_potential = std::numeric_limits<double>::max();
    for (std::size_t t = 0; t < trials; ++t) {
      std::size_t candidate;
      if (total > 0.0) {
        const double target = rng.uniform() * total;
        double acc = 0.0;
        candidate = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
          acc += best[i];
          if (acc >= target) {
            candidate = i;
            break;
          }
        }
      } else {
        candidate = rng.below(n);  // all points already covered exactly
      }
      double potential = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          const double diff = points(i, c) - points(candidate, c);
          s += diff * diff;
        }
        candidate_gain[i] = std::min(best[i], s);
        potential += candidate_gain[i];
      }
      if (potential < chosen_potential) {
        chosen_potential = potential;
        chosen = candidate;
      }
    }

    std::vector<double> next(d);
    for (std::size_t c = 0; c < d; ++c) next[c] = points(chosen, c);
    centers.push_back(std::move(next));
    for (std::size_t i = 0; i < n; ++i)
      best[i] = std::min(best[i], squared_distance(points, i, centers.back()));
  }
  return centers;
}

}  // namespace

std::vector<int> kmeans(const DenseMatrix& points, std::size_t k, std::uint64_t seed,
                        std::size_t max_iterations) {
  const std::size_t n = points.rows(), d = points.cols();
  if (k < 1 || k > n) throw std::invalid_argument("kmeans: k out of range");

  Rng rng(seed);
  std::vector<std::vector<double>> centers = seed_centers(points, k, rng);
  std::vector<int> labels(n, -1);

  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      int arg = 0;
      double best = std::numeric_limits<double>::max();
      for (std::size_t c = 0; c < k; ++c) {
        const double dist = squared_distance(points, i, centers[c]);
        if (dist < best) {
          best = dist;
          arg = static_cast<int>(c);
        }
      }
      if (labels[i] != arg) {
        labels[i] = arg;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    std::vector<std::size_t> counts(k, 0);
    std::vector<std::vector<double>> sums(k, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = static_cast<std::size_t>(labels[i]);
      ++counts[c];
      for (std::size_t j = 0; j < d; ++j) sums[c][j] += points(i, j);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        centers[c][j] = sums[c][j] / static_cast<double>(counts[c]);
    }
    // Relocate empty clusters onto the points farthest from their own
    // centers, claiming each point so successive empties pick distinct ones.
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = 0;
      double far_dist = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double dist =
            squared_distance(points, i, centers[static_cast<std::size_t>(labels[i])]);
        if (dist > far_dist) {
          far_dist = dist;
          far = i;
        }
      }
      for (std::size_t j = 0; j < d; ++j) centers[c][j] = points(far, j);
      labels[far] = static_cast<int>(c);
      counts[c] = 1;
    }
  }
  return labels;
}

double kmeans_objective(const DenseMatrix& points, std::span<const int> labels) {
  if (labels.size() != points.rows())
    throw std::invalid_argument("kmeans_objective: label count mismatch");
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  const std::size_t d = points.cols();
  std::vector<std::vector<double>> sums(k, std::vector<double>(d, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    ++counts[static_cast<std::size_t>(labels[i])];
    for (std::size_t j = 0; j < d; ++j)
      sums[static_cast<std::size_t>(labels[i])][j] += points(i, j);
  }
  for (int c = 0; c < k; ++c)
    if (counts[c] > 0)
      for (std::size_t j = 0; j < d; ++j)
        sums[c][j] /= static_cast<double>(counts[c]);
  double sse = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i)
    sse += squared_distance(points, i, sums[static_cast<std::size_t>(labels[i])]);
  return sse;
}

double adjusted_rand_index(std::span<const int> labels_a, std::span<const int> labels_b) {
  if (labels_a.size() != labels_b.size())
    throw std::invalid_argument("adjusted_rand_index: label length mismatch");
  const std::size_t n = labels_a.size();
  if (n == 0) throw std::invalid_argument("adjusted_rand_index: empty labelings");

  std::map<std::pair<int, int>, double> cells;
  std::map<int, double> row_sums, col_sums;
  for (std::size_t i = 0; i < n; ++i) {
    cells[{labels_a[i], labels_b[i]}] += 1.0;
    row_sums[labels_a[i]] += 1.0;
    col_sums[labels_b[i]] += 1.0;
  }

  const auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, count] : cells) sum_cells += choose2(count);
  for (const auto& [key, count] : row_sums) sum_rows += choose2(count);
  for (const auto& [key, count] : col_sums) sum_cols += choose2(count);

  const double total_pairs = choose2(static_cast<double>(n));
  const double expected = sum_rows * sum_cols / total_pairs;
  const double maximum = 0.5 * (sum_rows + sum_cols);
  const double denom = maximum - expected;
  if (denom == 0.0) {
    // Degenerate table (e.g. both labelings all-singleton or all-constant):
    // agreement is perfect iff the pair counts coincide.
    return (sum_cells == sum_rows && sum_cells == sum_cols) ? 1.0 : 0.0;
  }
  return (sum_cells - expected) / denom;
}

double confusion_ratio(const Configuration& config,
                       const std::vector<std::size_t>& anomalies) {
  const std::size_t m = config.modality_count();
  const std::size_t n = config.object_count();
  const std::size_t d = config.dim();
  if (m < 2) throw std::invalid_argument("confusion_ratio: needs at least two modalities");

  std::vector<bool> anomalous(n, false);
  for (std::size_t idx : anomalies) {
    if (idx >= n) throw std::invalid_argument("confusion_ratio: anomaly index out of range");
    anomalous[idx] = true;
  }
  if (anomalies.empty() || anomalies.size() >= n)
    throw std::invalid_argument("confusion_ratio: both object groups must be nonempty");

  const auto mean_spread = [&](std::size_t object) {
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          const double diff = config.blocks[i](object, c) - config.blocks[j](object, c);
          s += diff * diff;
        }
        total += std::sqrt(s);
        ++pairs;
      }
    return total / static_cast<double>(pairs);
  };

  double numer = 0.0, denom = 0.0;
  std::size_t numer_count = 0, denom_count = 0;
  for (std::size_t obj = 0; obj < n; ++obj) {
    if (anomalous[obj]) {
      numer += mean_spread(obj);
      ++numer_count;
    } else {
      denom += mean_spread(obj);
      ++denom_count;
    }
  }
  numer /= static_cast<double>(numer_count);
  denom /= static_cast<double>(denom_count);

  if (denom == 0.0) {
    if (numer == 0.0) return 1.0;
    std::cerr << "confusion_ratio: non-anomalous spread is zero; reporting +inf\n";
    return std::numeric_limits<double>::infinity();
  }
  return numer / denom;
}

double relative_error_trace(const EmbeddingResult& result, std::size_t k) {
  if (result.config_trace.empty())
    throw std::invalid_argument("relative_error_trace: solver was run without the trace");
  if (k >= result.config_trace.size())
    throw std::invalid_argument("relative_error_trace: iterate index out of range");
  const Configuration& final = result.config_trace.back();
  const Configuration& at_k = result.config_trace[k];
  double diff2 = 0.0;
  for (std::size_t b = 0; b < final.blocks.size(); ++b) {
    const DenseMatrix gap = final.blocks[b] - at_k.blocks[b];
    const double f = frobenius_norm(gap);
    diff2 += f * f;
  }
  const double base = frobenius_norm(final);
  if (base == 0.0) return 0.0;
  return std::sqrt(diff2) / base;
}

}  // namespace jofc
