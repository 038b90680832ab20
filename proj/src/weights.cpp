#include "jofc/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "jofc/linalg.hpp"

namespace jofc {

namespace {

void require_positive(double w, const char* what) {
  if (!(w > 0.0) || !std::isfinite(w))
    throw std::invalid_argument(std::string("WeightSpec: ") + what +
                                " must be strictly positive");
}

}  // namespace

WeightSpec WeightSpec::uniform(double w) {
  require_positive(w, "w");
  WeightSpec spec;
  spec.kind_ = Kind::uniform;
  spec.uniform_w_ = w;
  return spec;
}

WeightSpec WeightSpec::general(DenseMatrix w) {
  if (!is_square(w) || w.rows() == 0)
    throw std::invalid_argument("WeightSpec: general weight matrix must be square");
  if (symmetry_gap(w) > 0.0)
    throw std::invalid_argument("WeightSpec: general weight matrix must be symmetric");
  for (std::size_t i = 0; i < w.size(); ++i) require_positive(w.data()[i], "w_ij");
  WeightSpec spec;
  spec.kind_ = Kind::general_symmetric;
  spec.general_ = std::move(w);
  return spec;
}

WeightSpec WeightSpec::product(std::vector<double> within, double fidelity_scale) {
  if (within.empty())
    throw std::invalid_argument("WeightSpec: product weights must be nonempty");
  for (double w : within) require_positive(w, "w_ii");
  require_positive(fidelity_scale, "c");
  WeightSpec spec;
  spec.kind_ = Kind::product;
  spec.product_ = std::move(within);
  spec.scale_ = fidelity_scale;
  return spec;
}

double WeightSpec::within_weight(std::size_t i) const {
  switch (kind_) {
    case Kind::uniform: return 1.0;
    case Kind::general_symmetric: return general_(i, i);
    case Kind::product: return scale_ * product_[i];
  }
  return 1.0;
}

double WeightSpec::cross_weight(std::size_t i, std::size_t j) const {
  switch (kind_) {
    case Kind::uniform: return uniform_w_;
    case Kind::general_symmetric: return general_(i, j);
    case Kind::product: return product_[i] * product_[j];
  }
  return 0.0;
}

void WeightSpec::validate(std::size_t m) const {
  if (m == 0) throw std::invalid_argument("WeightSpec: m must be positive");
  if (kind_ == Kind::general_symmetric && general_.rows() != m)
    throw std::invalid_argument("WeightSpec: general weight matrix size mismatch");
  if (kind_ == Kind::product && product_.size() != m)
    throw std::invalid_argument("WeightSpec: product weight count mismatch");
}

DenseMatrix script_w(const WeightSpec& spec, std::size_t m, std::size_t n) {
  spec.validate(m);
  if (n < 2) throw std::invalid_argument("script_w: n must be at least 2");
  DenseMatrix w(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    double diag = static_cast<double>(n) * spec.within_weight(i);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double cross = spec.cross_weight(i, j);
      diag += cross;
      w(i, j) = -cross;
    }
    w(i, i) = diag;
  }
  return w;
}

DenseMatrix script_w_inverse(const WeightSpec& spec, std::size_t m, std::size_t n) {
  spec.validate(m);
  if (n < 2) throw std::invalid_argument("script_w_inverse: n must be at least 2");
  const double nn = static_cast<double>(n);
  DenseMatrix inv(m, m);
  switch (spec.kind()) {
    case WeightSpec::Kind::uniform: {
      const double w = spec.uniform_w();
      const double denom = nn * (nn + static_cast<double>(m) * w);
      const double diag = (nn + w) / denom;
      const double off = w / denom;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) inv(i, j) = (i == j) ? diag : off;
      return inv;
    }
    case WeightSpec::Kind::product: {
      const auto& a = spec.product_within();
      const double c = spec.fidelity_scale();
      double sum = 0.0;
      for (double x : a) sum += x;
      const double cn = c * nn;
      const double off = 1.0 / (cn * (cn + sum));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          inv(i, j) = (i == j) ? 1.0 / (a[i] * (cn + sum)) + off : off;
      return inv;
    }
    case WeightSpec::Kind::general_symmetric:
      return invert_small(script_w(spec, m, n));
  }
  throw std::logic_error("script_w_inverse: unreachable");
}

ScriptW ScriptW::make(const WeightSpec& spec, std::size_t m, std::size_t n) {
  ScriptW out{script_w(spec, m, n), script_w_inverse(spec, m, n)};
  const DenseMatrix check = out.w * out.w_inverse;
  if (max_abs_diff(check, DenseMatrix::identity(m)) > 1e-12 * std::max(1.0, max_abs(out.w)))
    throw NumericalError("ScriptW: inverse check failed");
  return out;
}

KroneckerFactors kronecker_sum_inverse(const DenseMatrix& a, const DenseMatrix& b,
                                       std::size_t n) {
  if (!is_square(a) || !is_square(b) || a.rows() != b.rows())
    throw std::invalid_argument("kronecker_sum_inverse: factor shape mismatch");
  const DenseMatrix a_inv = invert_small(a);
  DenseMatrix shifted = a;
  for (std::size_t i = 0; i < shifted.size(); ++i)
    shifted.data()[i] += static_cast<double>(n) * b.data()[i];
  const DenseMatrix shifted_inv = invert_small(shifted);
  return {a_inv, -1.0 * (shifted_inv * (b * a_inv))};
}

KroneckerFactors laplacian_pseudoinverse_factors(const WeightSpec& spec, std::size_t m,
                                                 std::size_t n) {
  spec.validate(m);
  if (n < 2)
    throw std::invalid_argument("laplacian_pseudoinverse_factors: n must be at least 2");
  const double mn = static_cast<double>(m) * static_cast<double>(n);

  // L = script_w (x) I_n - diag(a) (x) J_n, so L + J/(mn) has Kronecker-sum
  // form with B = J_m/(mn) - diag(a); subtracting J_m/(mn) from the J-factor
  // of its inverse yields the pseudoinverse.
  DenseMatrix b(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      b(i, j) = 1.0 / mn - (i == j ? spec.within_weight(i) : 0.0);

  KroneckerFactors f = kronecker_sum_inverse(script_w(spec, m, n), b, n);
  f.v = script_w_inverse(spec, m, n);
  for (std::size_t i = 0; i < f.z.size(); ++i) f.z.data()[i] -= 1.0 / mn;
  return f;
}

DenseMatrix materialize_kronecker(const KroneckerFactors& f, std::size_t n) {
  const std::size_t m = f.v.rows();
  DenseMatrix out(m * n, m * n);
  for (std::size_t bi = 0; bi < m; ++bi)
    for (std::size_t bj = 0; bj < m; ++bj) {
      const double v = f.v(bi, bj), z = f.z(bi, bj);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          out(bi * n + i, bj * n + j) = z + (i == j ? v : 0.0);
    }
  return out;
}

DenseMatrix dense_weight_matrix(const WeightSpec& spec, std::size_t m, std::size_t n,
                                std::size_t cap) {
  spec.validate(m);
  if (m * n > cap)
    throw std::invalid_argument("dense_weight_matrix: mn exceeds the dense cap");
  DenseMatrix w(m * n, m * n);
  for (std::size_t bi = 0; bi < m; ++bi) {
    const double a = spec.within_weight(bi);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) w(bi * n + i, bi * n + j) = a;
    for (std::size_t bj = 0; bj < m; ++bj) {
      if (bj == bi) continue;
      const double cross = spec.cross_weight(bi, bj);
      for (std::size_t i = 0; i < n; ++i) w(bi * n + i, bj * n + i) = cross;
    }
  }
  return w;
}

DenseMatrix laplacian_of(const DenseMatrix& w) {
  if (!is_square(w)) throw std::invalid_argument("laplacian_of: matrix not square");
  const std::size_t n = w.rows();
  DenseMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      degree += w(i, j);
      l(i, j) = -w(i, j);
    }
    l(i, i) = degree - w(i, i);
  }
  return l;
}

}  // namespace jofc
