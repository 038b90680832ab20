#include "jofc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "jofc/init.hpp"
#include "jofc/simulate.hpp"
#include "jofc/solver.hpp"

namespace jofc {

namespace {

struct Summary {
  double mean = 0.0, stderr_mean = 0.0, median = 0.0, min = 0.0;
};

Summary summarize(std::vector<double> samples) {
  Summary s;
  const std::size_t n = samples.size();
  if (n == 0) return s;
  for (double v : samples) s.mean += v;
  s.mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : samples) var += (v - s.mean) * (v - s.mean);
  if (n > 1) s.stderr_mean = std::sqrt(var / static_cast<double>(n - 1)) /
                             std::sqrt(static_cast<double>(n));
  std::sort(samples.begin(), samples.end());
  s.median = (n % 2 == 1) ? samples[n / 2]
                          : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  s.min = samples.front();
  return s;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::size_t> parse_size_list(const std::string& value) {
  std::vector<std::size_t> out;
  std::istringstream stream(value);
  std::string token;
  while (std::getline(stream, token, ','))
    out.push_back(static_cast<std::size_t>(std::stoull(trim(token))));
  return out;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  std::vector<BenchRow> rows;
  const WeightSpec spec = WeightSpec::uniform(options.w);

  for (std::size_t n : options.n_list) {
    for (std::size_t m : options.m_list) {
      std::vector<double> fast_times, reference_times;
      for (std::size_t rep = 0; rep < options.replicates; ++rep) {
        const std::uint64_t seed = options.seed + 977u * rep;
        const SimulatedProblem sim = generate_matched(n, m, options.dim, seed);
        const OmnibusProblem problem = sim.problem();

        // One shared starting configuration per cell so both algorithms walk
        // the same majorization path.
        const Configuration start =
            (options.init == InitKind::imputed_cmds)
                ? imputed_omnibus_init(problem, options.d, options.dense_cap)
                : averaged_procrustes_init(problem, options.d, options.parallel);

        SolveOptions solve;
        solve.dim = options.d;
        solve.eps = 1e-300;  // fixed iteration budget; eps never triggers
        solve.max_iterations = options.iterations;
        solve.parallel = options.parallel;
        solve.init = InitKind::provided;
        solve.init_config = start;
        solve.dense_cap = options.dense_cap;

        const EmbeddingResult fast = fjofc_embed(problem, spec, solve);
        fast_times.insert(fast_times.end(), fast.step_seconds.begin(),
                          fast.step_seconds.end());

        if (options.run_reference) {
          const EmbeddingResult reference = jofc_embed_reference(problem, spec, solve);
          reference_times.insert(reference_times.end(), reference.step_seconds.begin(),
                                 reference.step_seconds.end());
        }
      }

      const Summary fast_summary = summarize(std::move(fast_times));
      rows.push_back({n, m, "fjofc", options.replicates, options.iterations,
                      fast_summary.mean, fast_summary.stderr_mean, fast_summary.median,
                      fast_summary.min});
      if (options.run_reference) {
        const Summary ref_summary = summarize(std::move(reference_times));
        rows.push_back({n, m, "jofc", options.replicates, options.iterations,
                        ref_summary.mean, ref_summary.stderr_mean, ref_summary.median,
                        ref_summary.min});
      }
    }
  }
  return rows;
}

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::invalid_argument("cannot open '" + path + "'");
  std::fprintf(f,
               "n,m,algorithm,replicates,iterations,mean_step_seconds,"
               "stderr_step_seconds,median_step_seconds,min_step_seconds\n");
  for (const BenchRow& row : rows)
    std::fprintf(f, "%zu,%zu,%s,%zu,%zu,%.9e,%.9e,%.9e,%.9e\n", row.n, row.m,
                 row.algorithm.c_str(), row.replicates, row.iterations,
                 row.mean_step_seconds, row.stderr_step_seconds,
                 row.median_step_seconds, row.min_step_seconds);
  std::fclose(f);
}

BenchOptions parse_bench_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  BenchOptions options;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("'" + path + "' line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));

    if (key == "n_list")
      options.n_list = parse_size_list(value);
    else if (key == "m_list")
      options.m_list = parse_size_list(value);
    else if (key == "d")
      options.d = std::stoull(value);
    else if (key == "dim")
      options.dim = std::stoull(value);
    else if (key == "w")
      options.w = std::stod(value);
    else if (key == "replicates")
      options.replicates = std::stoull(value);
    else if (key == "iterations")
      options.iterations = std::stoull(value);
    else if (key == "seed")
      options.seed = std::stoull(value);
    else if (key == "init")
      options.init = (value == "averaged") ? InitKind::averaged_procrustes
                                           : InitKind::imputed_cmds;
    else if (key == "reference")
      options.run_reference = (value == "true" || value == "1" || value == "yes");
    else if (key == "parallel")
      options.parallel = (value == "true" || value == "1" || value == "yes");
    else if (key == "dense_cap")
      options.dense_cap = std::stoull(value);
    else
      throw std::invalid_argument("'" + path + "' line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
  }
  return options;
}

}  // namespace jofc
