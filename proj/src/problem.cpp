#include "jofc/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace jofc {

OmnibusProblem::OmnibusProblem(std::vector<DissimilarityMatrix> modalities)
    : modalities_(std::move(modalities)) {
  if (modalities_.empty())
    throw std::invalid_argument("OmnibusProblem: at least one modality required");
  n_ = modalities_.front().rows();
  if (n_ < 2) throw std::invalid_argument("OmnibusProblem: need at least two objects");
  for (std::size_t i = 0; i < modalities_.size(); ++i) {
    const auto& delta = modalities_[i];
    const std::string tag = "modality " + std::to_string(i);
    if (!is_square(delta) || delta.rows() != n_)
      throw std::invalid_argument("OmnibusProblem: " + tag + " has wrong shape");
    if (!all_finite(delta))
      throw std::invalid_argument("OmnibusProblem: " + tag + " has non-finite entries");
    const double scale = std::max(1.0, max_abs(delta));
    if (symmetry_gap(delta) > 1e-9 * scale)
      throw std::invalid_argument("OmnibusProblem: " + tag + " is not symmetric");
    for (std::size_t r = 0; r < n_; ++r) {
      if (delta(r, r) != 0.0)
        throw std::invalid_argument("OmnibusProblem: " + tag + " has nonzero diagonal");
      for (std::size_t c = 0; c < n_; ++c)
        if (delta(r, c) < 0.0)
          throw std::invalid_argument("OmnibusProblem: " + tag + " has a negative entry");
    }
  }
}

OmnibusProblem OmnibusProblem::normalized() const {
  std::vector<DissimilarityMatrix> scaled = modalities_;
  for (auto& delta : scaled) {
    const double norm = frobenius_norm(delta);
    if (norm == 0.0) continue;
    for (std::size_t i = 0; i < delta.size(); ++i) delta.data()[i] /= norm;
  }
  return OmnibusProblem(std::move(scaled));
}

OmnibusProblem OmnibusProblem::leading_objects(std::size_t count) const {
  if (count < 2 || count > n_)
    throw std::invalid_argument("OmnibusProblem: invalid restriction size");
  std::vector<DissimilarityMatrix> cut;
  cut.reserve(modalities_.size());
  for (const auto& delta : modalities_) {
    DenseMatrix small(count, count);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < count; ++j) small(i, j) = delta(i, j);
    cut.push_back(std::move(small));
  }
  return OmnibusProblem(std::move(cut));
}

DenseMatrix Configuration::stacked() const {
  const std::size_t m = modality_count(), n = object_count(), d = dim();
  DenseMatrix x(m * n, d);
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) x(b * n + i, j) = blocks[b](i, j);
  return x;
}

Configuration Configuration::from_stacked(const DenseMatrix& x, std::size_t m) {
  if (m == 0 || x.rows() % m != 0)
    throw std::invalid_argument("Configuration: stacked rows not divisible by m");
  const std::size_t n = x.rows() / m, d = x.cols();
  Configuration c;
  c.blocks.assign(m, DenseMatrix(n, d));
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) c.blocks[b](i, j) = x(b * n + i, j);
  return c;
}

double frobenius_norm(const Configuration& c) {
  double s = 0.0;
  for (const auto& block : c.blocks) {
    const double f = frobenius_norm(block);
    s += f * f;
  }
  return std::sqrt(s);
}

double max_abs_diff(const Configuration& a, const Configuration& b) {
  if (a.modality_count() != b.modality_count())
    throw std::invalid_argument("Configuration: block count mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    s = std::max(s, max_abs_diff(a.blocks[i], b.blocks[i]));
  return s;
}

}  // namespace jofc
