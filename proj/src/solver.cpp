#include "jofc/solver.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "jofc/init.hpp"
#include "jofc/linalg.hpp"

namespace jofc {

namespace {

// P_l = B_l X^(l) accumulated row by row; the B entries are formed on the fly
// from the current distances, so nothing of size n x n is materialized.
void block_guttman_products(const Configuration& config, const OmnibusProblem& problem,
                            const WeightSpec& spec, bool parallel,
                            std::vector<DenseMatrix>& products) {
  const std::size_t m = problem.modality_count();
  const std::size_t n = problem.object_count();
  const std::size_t d = config.dim();

  products.resize(m);
  for (std::size_t l = 0; l < m; ++l) products[l] = DenseMatrix(n, d);

#pragma omp parallel for collapse(2) schedule(static) if (parallel)
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      const DenseMatrix& delta = problem.modality(l);
      const DenseMatrix& x = config.blocks[l];
      const double a = spec.within_weight(l);
      const double* xi = x.data() + i * d;
      double* out = products[l].data() + i * d;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        const double* xk = x.data() + k * d;
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          const double diff = xi[c] - xk[c];
          s += diff * diff;
        }
        const double dist = std::sqrt(s);
        if (dist == 0.0) continue;
        const double ratio = a * delta(i, k) / dist;
        for (std::size_t c = 0; c < d; ++c) out[c] += ratio * (xi[c] - xk[c]);
      }
    }
  }
}

Configuration mix_products(const std::vector<DenseMatrix>& products,
                           const DenseMatrix& w_inverse, bool parallel) {
  const std::size_t m = products.size();
  const std::size_t n = products.front().rows();
  const std::size_t d = products.front().cols();

  Configuration next;
  next.blocks.assign(m, DenseMatrix(n, d));
#pragma omp parallel for collapse(2) schedule(static) if (parallel)
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      double* out = next.blocks[j].data() + i * d;
      for (std::size_t l = 0; l < m; ++l) {
        const double coeff = w_inverse(j, l);
        const double* p = products[l].data() + i * d;
        for (std::size_t c = 0; c < d; ++c) out[c] += coeff * p[c];
      }
    }
  }
  return next;
}

Configuration fast_step(const Configuration& config, const OmnibusProblem& problem,
                        const WeightSpec& spec, const DenseMatrix& w_inverse,
                        bool parallel, std::vector<DenseMatrix>& scratch) {
  require_consistent_shapes(config, problem, spec);
  block_guttman_products(config, problem, spec, parallel, scratch);
  return mix_products(scratch, w_inverse, parallel);
}

Configuration make_init(const OmnibusProblem& problem, const WeightSpec& spec,
                        const SolveOptions& options) {
  spec.validate(problem.modality_count());
  if (options.dim < 1) throw std::invalid_argument("SolveOptions: dim must be positive");
  if (!(options.eps > 0.0)) throw std::invalid_argument("SolveOptions: eps must be positive");

  switch (options.init) {
    case InitKind::averaged_procrustes:
      return averaged_procrustes_init(problem, options.dim, options.parallel);
    case InitKind::imputed_cmds:
      return imputed_omnibus_init(problem, options.dim, options.dense_cap);
    case InitKind::provided: {
      if (!options.init_config)
        throw std::invalid_argument("SolveOptions: provided init missing a configuration");
      const Configuration& given = *options.init_config;
      if (given.modality_count() != problem.modality_count() ||
          given.object_count() != problem.object_count() || given.dim() != options.dim)
        throw std::invalid_argument("SolveOptions: provided init has the wrong shape");
      return given;
    }
  }
  throw std::logic_error("make_init: unreachable");
}

EmbeddingResult run_majorization(
    const OmnibusProblem& problem, const WeightSpec& spec, const SolveOptions& options,
    const std::function<Configuration(const Configuration&)>& step) {
  const double pairs =
      stress_pair_count(problem.modality_count(), problem.object_count());

  EmbeddingResult result;
  result.config = make_init(problem, spec, options);

  double stress = raw_stress(result.config, problem, spec, options.parallel);
  if (!std::isfinite(stress))
    throw NumericalError("embed: non-finite stress at the initial configuration");
  result.stress_trace.push_back(stress);
  if (options.keep_config_trace) result.config_trace.push_back(result.config);

  result.terminated = Termination::max_iterations;
  using clock = std::chrono::steady_clock;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const auto t0 = clock::now();
    Configuration next = step(result.config);
    const auto t1 = clock::now();
    result.step_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());

    const double next_stress = raw_stress(next, problem, spec, options.parallel);
    if (!std::isfinite(next_stress))
      throw NumericalError("embed: non-finite stress at iteration " + std::to_string(it + 1));

    result.config = std::move(next);
    result.stress_trace.push_back(next_stress);
    if (options.keep_config_trace) result.config_trace.push_back(result.config);
    ++result.iterations;

    const double decrease = (stress - next_stress) / pairs;
    stress = next_stress;
    if (decrease < options.eps) {
      result.terminated = Termination::converged;
      break;
    }
  }

  result.normalized_stress_trace.resize(result.stress_trace.size());
  for (std::size_t i = 0; i < result.stress_trace.size(); ++i)
    result.normalized_stress_trace[i] = result.stress_trace[i] / pairs;
  return result;
}

}  // namespace

Configuration guttman_step_fast(const Configuration& config,
                                const OmnibusProblem& problem, const WeightSpec& spec,
                                bool parallel) {
  const ScriptW sw =
      ScriptW::make(spec, problem.modality_count(), problem.object_count());
  std::vector<DenseMatrix> scratch;
  return fast_step(config, problem, spec, sw.w_inverse, parallel, scratch);
}

DenseMatrix dense_omnibus_delta(const OmnibusProblem& problem) {
  const std::size_t m = problem.modality_count();
  const std::size_t n = problem.object_count();
  DenseMatrix delta(m * n, m * n);
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        delta(l * n + i, l * n + j) = problem.modality(l)(i, j);
  return delta;
}

DenseMatrix dense_b_matrix(const DenseMatrix& weights, const DenseMatrix& delta,
                           const DenseMatrix& x_stacked) {
  const std::size_t total = weights.rows();
  if (delta.rows() != total || x_stacked.rows() != total)
    throw std::invalid_argument("dense_b_matrix: shape mismatch");
  const std::size_t d = x_stacked.cols();

  DenseMatrix b(total, total);
  for (std::size_t i = 0; i < total; ++i) {
    double row_sum = 0.0;
    const double* xi = x_stacked.data() + i * d;
    for (std::size_t j = 0; j < total; ++j) {
      if (j == i) continue;
      const double w = weights(i, j);
      if (w == 0.0) continue;
      const double* xj = x_stacked.data() + j * d;
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double diff = xi[c] - xj[c];
        s += diff * diff;
      }
      const double dist = std::sqrt(s);
      if (dist == 0.0) continue;
      const double entry = -w * delta(i, j) / dist;
      b(i, j) = entry;
      row_sum += entry;
    }
    b(i, i) = -row_sum;
  }
  return b;
}

Configuration guttman_step_reference(const Configuration& config,
                                     const OmnibusProblem& problem,
                                     const WeightSpec& spec, std::size_t dense_cap) {
  require_consistent_shapes(config, problem, spec);
  const std::size_t m = problem.modality_count();
  const std::size_t n = problem.object_count();
  if (m * n > dense_cap)
    throw std::invalid_argument("guttman_step_reference: mn exceeds the dense cap");

  const DenseMatrix pinv =
      materialize_kronecker(laplacian_pseudoinverse_factors(spec, m, n), n);
  const DenseMatrix weights = dense_weight_matrix(spec, m, n, dense_cap);
  const DenseMatrix delta = dense_omnibus_delta(problem);
  const DenseMatrix b = dense_b_matrix(weights, delta, config.stacked());
  return Configuration::from_stacked(pinv * (b * config.stacked()), m);
}

EmbeddingResult fjofc_embed(const OmnibusProblem& problem, const WeightSpec& spec,
                            const SolveOptions& options) {
  if (options.normalize) {
    SolveOptions opts = options;
    opts.normalize = false;
    return fjofc_embed(problem.normalized(), spec, opts);
  }
  const ScriptW sw =
      ScriptW::make(spec, problem.modality_count(), problem.object_count());
  std::vector<DenseMatrix> scratch;
  return run_majorization(problem, spec, options, [&](const Configuration& x) {
    return fast_step(x, problem, spec, sw.w_inverse, options.parallel, scratch);
  });
}

EmbeddingResult jofc_embed_reference(const OmnibusProblem& problem,
                                     const WeightSpec& spec,
                                     const SolveOptions& options) {
  if (options.normalize) {
    SolveOptions opts = options;
    opts.normalize = false;
    return jofc_embed_reference(problem.normalized(), spec, opts);
  }
  const std::size_t m = problem.modality_count();
  const std::size_t n = problem.object_count();
  if (m * n > options.dense_cap)
    throw std::invalid_argument("jofc_embed_reference: mn exceeds the dense cap");

  // The pseudoinverse and weight matrix do not depend on the iterate; build
  // them once so the timed per-iteration work is B plus two dense products.
  const DenseMatrix pinv =
      materialize_kronecker(laplacian_pseudoinverse_factors(spec, m, n), n);
  const DenseMatrix weights = dense_weight_matrix(spec, m, n, options.dense_cap);
  const DenseMatrix delta = dense_omnibus_delta(problem);

  DenseMatrix bx(m * n, options.dim), out(m * n, options.dim);
  return run_majorization(problem, spec, options, [&](const Configuration& x) {
    const DenseMatrix stacked = x.stacked();
    const DenseMatrix b = dense_b_matrix(weights, delta, stacked);
    multiply_into(b, stacked, bx);
    multiply_into(pinv, bx, out);
    return Configuration::from_stacked(out, m);
  });
}

}  // namespace jofc
