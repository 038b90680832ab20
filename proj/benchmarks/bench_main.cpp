// Compares the OpenMP fast path against its serial form and against the dense
// reference transform on a small matched-setting grid, printing one table row
// per cell.

#include <cstdio>
#include <string>

#include "jofc/bench.hpp"

int main(int argc, char** argv) {
  jofc::BenchOptions options;
  options.n_list = {100, 200, 400};
  options.m_list = {2, 3};
  options.replicates = 2;
  options.iterations = 15;

  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--quick") {
      options.n_list = {100, 200};
      options.m_list = {2};
      options.iterations = 8;
    } else {
      std::fprintf(stderr, "usage: %s [--quick]\n", argv[0]);
      return 1;
    }
  }

  std::printf("%6s %3s %-14s %14s %14s\n", "n", "m", "variant", "median_step_s",
              "mean_step_s");

  // Serial fast path, parallel fast path, dense reference.
  for (int mode = 0; mode < 2; ++mode) {
    jofc::BenchOptions run = options;
    run.parallel = (mode == 1);
    run.run_reference = (mode == 0);
    const auto rows = jofc::run_bench(run);
    for (const auto& row : rows) {
      std::string variant = row.algorithm == "jofc"
                                ? "reference"
                                : (run.parallel ? "fast-parallel" : "fast-serial");
      std::printf("%6zu %3zu %-14s %14.6e %14.6e\n", row.n, row.m, variant.c_str(),
                  row.median_step_seconds, row.mean_step_seconds);
    }
  }
  return 0;
}
