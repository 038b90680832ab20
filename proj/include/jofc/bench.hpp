#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jofc/problem.hpp"
#include "jofc/weights.hpp"

namespace jofc {

struct BenchOptions {
  std::vector<std::size_t> n_list{200};
  std::vector<std::size_t> m_list{3};
  std::size_t d = 2;
  std::size_t dim = 2;  // latent dimension of the generated data
  double w = 1.0;
  std::size_t replicates = 3;
  std::size_t iterations = 25;  // fixed per-replicate iteration budget
  std::uint64_t seed = 1;
  InitKind init = InitKind::imputed_cmds;
  bool run_reference = true;
  bool parallel = false;
  std::size_t dense_cap = 4096;
};

struct BenchRow {
  std::size_t n = 0, m = 0;
  std::string algorithm;  // "fjofc" | "jofc"
  std::size_t replicates = 0, iterations = 0;
  double mean_step_seconds = 0.0;
  double stderr_step_seconds = 0.0;
  double median_step_seconds = 0.0;
  double min_step_seconds = 0.0;  // robust against load spikes
};

/// Times the per-iteration Guttman transform of both algorithms over the
/// (n, m) grid, matched-setting data, shared init per cell. Cells run
/// sequentially; only the transform itself is inside the clock.
std::vector<BenchRow> run_bench(const BenchOptions& options);

/// Columns: n,m,algorithm,replicates,iterations,mean_step_seconds,
/// stderr_step_seconds,median_step_seconds,min_step_seconds
void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows);

BenchOptions parse_bench_config(const std::string& path);

}  // namespace jofc
