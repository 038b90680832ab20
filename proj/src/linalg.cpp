#include "jofc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jofc/rng.hpp"

namespace jofc {

namespace {

constexpr int kJacobiSweepCap = 100;
constexpr double kJacobiOffTol = 1e-12;

void require_symmetric(const DenseMatrix& s, const char* who) {
  if (!is_square(s)) throw std::invalid_argument(std::string(who) + ": matrix not square");
  const double scale = std::max(1.0, max_abs(s));
  if (symmetry_gap(s) > 1e-9 * scale)
    throw std::invalid_argument(std::string(who) + ": matrix not symmetric");
}

double off_diagonal_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Cyclic Jacobi: rotations zero one off-diagonal pair at a time, eigenvectors
// accumulate in the columns of v.
void jacobi_decompose(const DenseMatrix& s, std::vector<double>& values, DenseMatrix& v) {
  const std::size_t n = s.rows();
  DenseMatrix a = s;
  v = DenseMatrix::identity(n);
  const double tol = kJacobiOffTol * frobenius_norm(s);

  int sweep = 0;
  for (; sweep < kJacobiSweepCap; ++sweep) {
    if (off_diagonal_norm(a) <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p), arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - sn * arq;
          a(r, q) = a(q, r) = sn * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - sn * vrq;
          v(r, q) = sn * vrp + c * vrq;
        }
      }
    }
  }
  if (sweep == kJacobiSweepCap && off_diagonal_norm(a) > tol)
    throw NumericalError("jacobi eigensolver did not converge within the sweep cap");

  values.resize(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
}

void fix_sign(std::vector<double>& vec) {
  std::size_t arg = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (std::abs(vec[i]) > best) {
      best = std::abs(vec[i]);
      arg = i;
    }
  }
  if (!vec.empty() && vec[arg] < 0.0)
    for (double& x : vec) x = -x;
}

std::vector<EigenPair> collect_sorted(const std::vector<double>& values,
                                      const DenseMatrix& v, std::size_t k) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  std::vector<EigenPair> out;
  out.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    EigenPair pair;
    pair.value = values[order[r]];
    pair.vector.resize(n);
    for (std::size_t i = 0; i < n; ++i) pair.vector[i] = v(i, order[r]);
    fix_sign(pair.vector);
    out.push_back(std::move(pair));
  }
  return out;
}

void project_out_leading(DenseMatrix& q, std::size_t j) {
  const std::size_t n = q.rows();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += q(r, i) * q(r, j);
      for (std::size_t r = 0; r < n; ++r) q(r, j) -= dot * q(r, i);
    }
  }
}

// Modified Gram-Schmidt with one reorthogonalization pass; columns that
// vanish are replaced by the first coordinate vector not in the span.
void orthonormalize_columns(DenseMatrix& q) {
  const std::size_t n = q.rows(), p = q.cols();
  for (std::size_t j = 0; j < p; ++j) {
    project_out_leading(q, j);
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += q(r, j) * q(r, j);
    norm = std::sqrt(norm);
    if (norm < 1e-150) {
      for (std::size_t e = 0; e < n; ++e) {
        for (std::size_t r = 0; r < n; ++r) q(r, j) = (r == e) ? 1.0 : 0.0;
        project_out_leading(q, j);
        double norm2 = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm2 += q(r, j) * q(r, j);
        norm2 = std::sqrt(norm2);
        if (norm2 > 1e-8) {
          norm = norm2;
          break;
        }
      }
    }
    for (std::size_t r = 0; r < n; ++r) q(r, j) /= norm;
  }
}

}  // namespace

std::vector<EigenPair> symmetric_eigen_all(const DenseMatrix& s) {
  require_symmetric(s, "symmetric_eigen_all");
  std::vector<double> values;
  DenseMatrix v;
  jacobi_decompose(s, values, v);
  return collect_sorted(values, v, s.rows());
}

std::vector<EigenPair> symmetric_top_eigenpairs(const DenseMatrix& s, std::size_t k) {
  require_symmetric(s, "symmetric_top_eigenpairs");
  if (k < 1 || k > s.rows())
    throw std::invalid_argument("symmetric_top_eigenpairs: k out of range");
  std::vector<double> values;
  DenseMatrix v;
  jacobi_decompose(s, values, v);
  return collect_sorted(values, v, k);
}

std::vector<EigenPair> symmetric_top_eigenpairs_subspace(const DenseMatrix& s,
                                                         std::size_t k) {
  require_symmetric(s, "symmetric_top_eigenpairs_subspace");
  const std::size_t n = s.rows();
  if (k < 1 || k > n)
    throw std::invalid_argument("symmetric_top_eigenpairs_subspace: k out of range");
  // Small problems or fat subspaces: the dense route is both faster and exact.
  if (n <= 64 || k + 4 >= n) {
    std::vector<double> values;
    DenseMatrix v;
    jacobi_decompose(s, values, v);
    return collect_sorted(values, v, k);
  }

  const std::size_t p = k + 4;
  const double snorm = frobenius_norm(s);
  if (snorm == 0.0) {
    // Zero matrix: any orthonormal set is an eigenbasis.
    std::vector<EigenPair> out(k);
    for (std::size_t i = 0; i < k; ++i) {
      out[i].value = 0.0;
      out[i].vector.assign(n, 0.0);
      out[i].vector[i] = 1.0;
    }
    return out;
  }
  // Shift by ||S||_F >= -lambda_min so convergence follows algebraic order.
  const double shift = snorm;
  const double tol = 1e-9 * snorm;

  Rng rng(0x9e3779b97f4a7c15ull);
  DenseMatrix q(n, p);
  for (std::size_t i = 0; i < q.size(); ++i) q.data()[i] = rng.normal();
  orthonormalize_columns(q);

  constexpr int kIterCap = 5000;
  for (int iter = 0; iter < kIterCap; ++iter) {
    DenseMatrix z = s * q;  // n x p

    // Rayleigh-Ritz on the current subspace.
    DenseMatrix t(p, p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        double dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += q(r, i) * z(r, j);
        t(i, j) = dot;
      }
    // Symmetrize the tiny Ritz matrix before the dense solve.
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j) {
        const double avg = 0.5 * (t(i, j) + t(j, i));
        t(i, j) = t(j, i) = avg;
      }
    std::vector<double> theta;
    DenseMatrix u;
    jacobi_decompose(t, theta, u);
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return theta[a] > theta[b]; });

    // Ritz vectors r_i = Q u_i and residuals S r_i - theta_i r_i = Z u_i - theta_i Q u_i.
    bool converged = true;
    DenseMatrix ritz(n, k);
    std::vector<double> ritz_values(k);
    for (std::size_t c = 0; c < k && converged; ++c) {
      const std::size_t col = order[c];
      double res2 = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        double rv = 0.0, zv = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
          rv += q(r, j) * u(j, col);
          zv += z(r, j) * u(j, col);
        }
        ritz(r, c) = rv;
        const double diff = zv - theta[col] * rv;
        res2 += diff * diff;
      }
      ritz_values[c] = theta[col];
      if (std::sqrt(res2) > tol) converged = false;
    }
    if (converged) {
      std::vector<EigenPair> out(k);
      for (std::size_t c = 0; c < k; ++c) {
        out[c].value = ritz_values[c];
        out[c].vector.resize(n);
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          out[c].vector[r] = ritz(r, c);
          norm += ritz(r, c) * ritz(r, c);
        }
        norm = std::sqrt(norm);
        for (double& x : out[c].vector) x /= norm;
        fix_sign(out[c].vector);
      }
      return out;
    }

    // Advance: Q <- orth((S + shift I) Q).
    for (std::size_t i = 0; i < q.size(); ++i) z.data()[i] += shift * q.data()[i];
    q = std::move(z);
    orthonormalize_columns(q);
  }
  throw NumericalError("subspace eigensolver did not converge within the iteration cap");
}

DenseMatrix pseudoinverse_oracle(const DenseMatrix& m) {
  require_symmetric(m, "pseudoinverse_oracle");
  const std::size_t n = m.rows();
  std::vector<double> values;
  DenseMatrix v;
  jacobi_decompose(m, values, v);

  double vmax = 0.0;
  for (double x : values) vmax = std::max(vmax, std::abs(x));
  const double cutoff = 1e-10 * vmax;

  DenseMatrix out(n, n);
  for (std::size_t e = 0; e < n; ++e) {
    if (std::abs(values[e]) <= cutoff) continue;
    const double inv = 1.0 / values[e];
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = v(i, e) * inv;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * v(j, e);
    }
  }
  return out;
}

DenseMatrix invert_small(const DenseMatrix& a) {
  if (!is_square(a)) throw std::invalid_argument("invert_small: matrix not square");
  const std::size_t n = a.rows();
  DenseMatrix work = a;
  DenseMatrix inv = DenseMatrix::identity(n);
  const double floor = 1e-13 * std::max(1.0, max_abs(a));

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
    if (std::abs(work(pivot, col)) < floor)
      throw NumericalError("invert_small: singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const double d = work(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = work(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        work(r, j) -= f * work(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

Svd svd_small(const DenseMatrix& a) {
  if (!is_square(a)) throw std::invalid_argument("svd_small: matrix not square");
  const std::size_t n = a.rows();
  DenseMatrix g = a;                       // columns converge to U * Sigma
  DenseMatrix v = DenseMatrix::identity(n);

  constexpr int kSweepCap = 64;
  for (int sweep = 0; sweep < kSweepCap; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          alpha += g(r, p) * g(r, p);
          beta += g(r, q) * g(r, q);
          gamma += g(r, p) * g(r, q);
        }
        if (std::abs(gamma) <= 1e-14 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = c * t;
        for (std::size_t r = 0; r < n; ++r) {
          const double gp = g(r, p), gq = g(r, q);
          g(r, p) = c * gp - sn * gq;
          g(r, q) = sn * gp + c * gq;
          const double vp = v(r, p), vq = v(r, q);
          v(r, p) = c * vp - sn * vq;
          v(r, q) = sn * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += g(r, j) * g(r, j);
    sigma[j] = std::sqrt(norm);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  Svd out;
  out.sigma.resize(n);
  out.u = DenseMatrix(n, n);
  out.v = DenseMatrix(n, n);
  const double rank_tol = 1e-13 * std::max(1.0, sigma.empty() ? 0.0 : sigma[order[0]]);
  std::size_t filled = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.sigma[j] = sigma[src];
    for (std::size_t r = 0; r < n; ++r) out.v(r, j) = v(r, src);
    if (sigma[src] > rank_tol) {
      for (std::size_t r = 0; r < n; ++r) out.u(r, j) = g(r, src) / sigma[src];
      filled = j + 1;
    }
  }
  // Deterministic completion of U for the null columns.
  for (std::size_t j = filled; j < n; ++j) {
    for (std::size_t e = 0; e < n; ++e) {
      std::vector<double> cand(n, 0.0);
      cand[e] = 1.0;
      for (std::size_t i = 0; i < j; ++i) {
        double dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += out.u(r, i) * cand[r];
        for (std::size_t r = 0; r < n; ++r) cand[r] -= dot * out.u(r, i);
      }
      double norm = 0.0;
      for (double x : cand) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 1e-6) {
        for (std::size_t r = 0; r < n; ++r) out.u(r, j) = cand[r] / norm;
        break;
      }
    }
  }
  return out;
}

}  // namespace jofc
