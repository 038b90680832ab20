// Command-line front end: embed, oos, simulate, bench, eval.
// Exit codes: 0 success, 1 validation error, 2 numerical failure.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jofc/bench.hpp"
#include "jofc/init.hpp"
#include "jofc/io.hpp"
#include "jofc/linalg.hpp"
#include "jofc/metrics.hpp"
#include "jofc/oos.hpp"
#include "jofc/simulate.hpp"
#include "jofc/solver.hpp"

namespace {

using namespace jofc;

struct EmbedArgs {
  std::string config_path;
  std::string algorithm_override;
  double w_override = -1.0;
  long long d_override = -1;
  double eps_override = -1.0;
  long long seed_override = -1;
  bool parallel = false;
  std::string out_override;
  std::string trace_path;
};

void write_trace_csv(const std::string& path, const EmbeddingResult& result) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::invalid_argument("cannot open '" + path + "'");
  std::fprintf(f, "iteration,stress,normalized_stress,step_seconds\n");
  for (std::size_t i = 0; i < result.stress_trace.size(); ++i)
    std::fprintf(f, "%zu,%.17g,%.17g,%.9e\n", i, result.stress_trace[i],
                 result.normalized_stress_trace[i],
                 i == 0 ? 0.0 : result.step_seconds[i - 1]);
  std::fclose(f);
}

int run_embed(const EmbedArgs& args) {
  RunConfig config = parse_run_config(args.config_path);
  if (!args.algorithm_override.empty())
    config.algorithm = (args.algorithm_override == "jofc") ? Algorithm::jofc_reference
                                                           : Algorithm::fjofc;
  if (args.w_override > 0.0) config.weights = WeightSpec::uniform(args.w_override);
  if (args.d_override > 0) config.d = static_cast<std::size_t>(args.d_override);
  if (args.eps_override > 0.0) config.eps = args.eps_override;
  if (args.seed_override >= 0) config.seed = static_cast<std::uint64_t>(args.seed_override);
  if (args.parallel) config.parallel = true;
  if (!args.out_override.empty()) config.out = args.out_override;
  if (config.out.empty()) config.out = "embedding.csv";

  OmnibusProblem problem = [&] {
    if (!config.inputs.empty()) return load_dissimilarities(config.inputs);
    const auto sim = (*config.generator == "matched")
                         ? generate_matched(config.n, config.m, config.dim, config.seed)
                         : generate_anomaly(config.n, config.m, config.n_anom,
                                            config.dim, config.seed);
    return sim.problem();
  }();

  SolveOptions options;
  options.dim = config.d;
  options.eps = config.eps;
  options.max_iterations = config.max_iterations;
  options.parallel = config.parallel;
  options.normalize = config.normalize;
  options.init = config.init;
  if (!config.init_explicit)
    options.init = (config.algorithm == Algorithm::jofc_reference)
                       ? InitKind::imputed_cmds
                       : InitKind::averaged_procrustes;

  const auto t0 = std::chrono::steady_clock::now();
  const EmbeddingResult result = (config.algorithm == Algorithm::jofc_reference)
                                     ? jofc_embed_reference(problem, config.weights, options)
                                     : fjofc_embed(problem, config.weights, options);
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  save_embedding(config.out, result.config);
  if (!args.trace_path.empty()) write_trace_csv(args.trace_path, result);

  const double mean_step =
      result.step_seconds.empty()
          ? 0.0
          : std::accumulate(result.step_seconds.begin(), result.step_seconds.end(), 0.0) /
                static_cast<double>(result.step_seconds.size());
  std::printf("embedding: %s\n", config.out.c_str());
  std::printf("iterations: %zu (%s)\n", result.iterations,
              result.terminated == Termination::converged ? "converged" : "max_iterations");
  std::printf("final_stress: %.10g\n", result.final_stress());
  std::printf("final_normalized_stress: %.10g\n", result.final_normalized_stress());
  std::printf("mean_step_seconds: %.6e\n", mean_step);
  std::printf("total_seconds: %.3f\n", total);
  return 0;
}

int run_simulate(const std::string& setting, std::size_t n, std::size_t m,
                 std::size_t dim, std::size_t n_anom, std::uint64_t seed,
                 const std::string& out) {
  const SimulatedProblem sim = (setting == "matched")
                                   ? generate_matched(n, m, dim, seed)
                                   : generate_anomaly(n, m, n_anom, dim, seed);

  std::vector<std::string> written;
  if (out.size() > 5 && out.substr(out.size() - 5) == ".jofc") {
    save_problem_binary(out, sim.problem());
    written.push_back(out);
    save_labels(out + ".labels.csv", sim.labels);
    written.push_back(out + ".labels.csv");
    if (!sim.anomalies.empty()) {
      save_indices(out + ".anomalies.csv", sim.anomalies);
      written.push_back(out + ".anomalies.csv");
    }
  } else {
    for (std::size_t i = 0; i < sim.modalities.size(); ++i) {
      const std::string path = out + "_" + std::to_string(i + 1) + ".csv";
      save_csv_matrix(path, sim.modalities[i]);
      written.push_back(path);
    }
    save_labels(out + "_labels.csv", sim.labels);
    written.push_back(out + "_labels.csv");
    if (!sim.anomalies.empty()) {
      save_indices(out + "_anomalies.csv", sim.anomalies);
      written.push_back(out + "_anomalies.csv");
    }
  }
  for (const auto& path : written) std::printf("wrote %s\n", path.c_str());
  return 0;
}

int run_oos(const std::string& embedding_path, const std::vector<std::string>& delta_paths,
            double w, double eps, std::size_t max_iterations, std::uint64_t seed,
            const std::string& out) {
  const Configuration x = load_embedding(embedding_path);
  OosDissimilarity deltas{load_delta_vectors(delta_paths)};

  OosOptions options;
  options.eps = eps;
  options.max_iterations = max_iterations;
  const OosResult result = oos_embed(x, deltas, w, options, seed);

  std::FILE* sink = out.empty() ? stdout : std::fopen(out.c_str(), "w");
  if (!sink) throw std::invalid_argument("cannot open '" + out + "'");
  for (std::size_t i = 0; i < result.y.rows(); ++i) {
    for (std::size_t j = 0; j < result.y.cols(); ++j)
      std::fprintf(sink, j ? ",%.17g" : "%.17g", result.y(i, j));
    std::fputc('\n', sink);
  }
  if (!out.empty()) std::fclose(sink);

  std::fprintf(stderr, "oos iterations: %zu (%s), final stress %.10g\n",
               result.iterations,
               result.terminated == Termination::converged ? "converged" : "max_iterations",
               result.stress_trace.back());
  return 0;
}

int run_eval(const std::string& embedding_path, const std::string& labels_path,
             const std::string& anomalies_path, std::uint64_t seed) {
  const Configuration config = load_embedding(embedding_path);
  const std::vector<int> object_labels = load_labels(labels_path);
  const std::size_t m = config.modality_count();
  const std::size_t n = config.object_count();
  if (object_labels.size() != n)
    throw std::invalid_argument("eval: label count does not match the embedding");

  std::vector<std::size_t> anomalies;
  if (!anomalies_path.empty()) anomalies = load_indices(anomalies_path);
  std::vector<bool> anomalous(n, false);
  for (std::size_t idx : anomalies) {
    if (idx >= n) throw std::invalid_argument("eval: anomaly index out of range");
    anomalous[idx] = true;
  }

  // Cluster the non-anomalous points (all of them in the matched setting)
  // into one cluster per ground-truth object.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (!anomalous[i]) keep.push_back(i);

  DenseMatrix points(keep.size() * m, config.dim());
  std::vector<int> truth(keep.size() * m);
  std::size_t row = 0;
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t i : keep) {
      for (std::size_t c = 0; c < config.dim(); ++c)
        points(row, c) = config.blocks[b](i, c);
      truth[row] = object_labels[i];
      ++row;
    }

  std::set<int> kept_labels;
  for (int l : truth) kept_labels.insert(l);
  const std::vector<int> clusters = kmeans(points, kept_labels.size(), seed);
  const double ari = adjusted_rand_index(clusters, truth);

  std::printf("objects: %zu  modalities: %zu  dim: %zu\n", n, m, config.dim());
  std::printf("kmeans_k: %zu\n", kept_labels.size());
  std::printf("ari: %.6f\n", ari);
  if (!anomalies.empty()) {
    const double ratio = confusion_ratio(config, anomalies);
    std::printf("confusion_ratio: %.6f\n", ratio);
  }
  return 0;
}

int run_bench_cmd(const std::string& grid_path, const std::string& out) {
  const BenchOptions options = parse_bench_config(grid_path);
  const auto rows = run_bench(options);
  write_bench_csv(out, rows);
  std::printf("%6s %3s %-6s %14s %14s %14s\n", "n", "m", "algo", "mean_s", "stderr_s",
              "median_s");
  for (const auto& row : rows)
    std::printf("%6zu %3zu %-6s %14.6e %14.6e %14.6e\n", row.n, row.m,
                row.algorithm.c_str(), row.mean_step_seconds, row.stderr_step_seconds,
                row.median_step_seconds);
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"JOFC manifold matching: fast raw-stress embedding of multiple "
               "dissimilarities over the same objects"};
  app.require_subcommand(1);

  EmbedArgs embed_args;
  auto* embed = app.add_subcommand("embed", "Embed an omnibus problem");
  embed->add_option("--config", embed_args.config_path, "run configuration file")
      ->required();
  embed->add_option("--algorithm", embed_args.algorithm_override, "fjofc|jofc")
      ->check(CLI::IsMember({"fjofc", "jofc"}));
  embed->add_option("--w", embed_args.w_override, "uniform commensurability weight");
  embed->add_option("--d", embed_args.d_override, "embedding dimension");
  embed->add_option("--eps", embed_args.eps_override, "normalized stress tolerance");
  embed->add_option("--seed", embed_args.seed_override, "generator seed");
  embed->add_flag("--parallel", embed_args.parallel, "parallel block products");
  embed->add_option("--out", embed_args.out_override, "embedding output path");
  embed->add_option("--trace", embed_args.trace_path, "write the stress trace CSV here");

  std::string oos_embedding, oos_out;
  std::vector<std::string> oos_deltas;
  double oos_w = 1.0, oos_eps = 1e-6;
  std::size_t oos_max_iter = 1000;
  std::uint64_t oos_seed = 0;
  auto* oos = app.add_subcommand("oos", "Embed one held-out object into a frozen configuration");
  oos->add_option("--embedding", oos_embedding, "frozen embedding path")->required();
  oos->add_option("--deltas", oos_deltas, "per-modality dissimilarity vectors")
      ->required()
      ->expected(-1);
  oos->add_option("--w", oos_w, "commensurability weight");
  oos->add_option("--eps", oos_eps, "stress decrease tolerance per residual term");
  oos->add_option("--max-iterations", oos_max_iter, "iteration cap");
  oos->add_option("--seed", oos_seed, "start-point seed");
  oos->add_option("--out", oos_out, "output CSV (default stdout)");

  std::string sim_setting, sim_out = "problem";
  std::size_t sim_n = 400, sim_m = 3, sim_dim = 2, sim_n_anom = 10;
  std::uint64_t sim_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic problem");
  simulate->add_option("--setting", sim_setting, "matched|anomaly")
      ->required()
      ->check(CLI::IsMember({"matched", "anomaly"}));
  simulate->add_option("--n", sim_n, "object count");
  simulate->add_option("--m", sim_m, "modality count");
  simulate->add_option("--dim", sim_dim, "latent dimension");
  simulate->add_option("--n-anom", sim_n_anom, "anomalous object count");
  simulate->add_option("--seed", sim_seed, "generator seed");
  simulate->add_option("--out", sim_out, "output prefix or .jofc path");

  std::string bench_grid, bench_out = "bench.csv";
  auto* bench = app.add_subcommand("bench", "Per-iteration timing of both algorithms");
  bench->add_option("--grid", bench_grid, "grid configuration file")->required();
  bench->add_option("--out", bench_out, "output CSV path");

  std::string eval_embedding, eval_labels, eval_anomalies;
  std::uint64_t eval_seed = 0;
  auto* eval = app.add_subcommand("eval", "Cluster metrics for a saved embedding");
  eval->add_option("--embedding", eval_embedding, "embedding path")->required();
  eval->add_option("--labels", eval_labels, "ground-truth object labels")->required();
  eval->add_option("--anomalies", eval_anomalies, "anomalous object indices");
  eval->add_option("--seed", eval_seed, "k-means seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (embed->parsed()) return run_embed(embed_args);
    if (oos->parsed())
      return run_oos(oos_embedding, oos_deltas, oos_w, oos_eps, oos_max_iter, oos_seed,
                     oos_out);
    if (simulate->parsed())
      return run_simulate(sim_setting, sim_n, sim_m, sim_dim, sim_n_anom, sim_seed,
                          sim_out);
    if (bench->parsed()) return run_bench_cmd(bench_grid, bench_out);
    if (eval->parsed()) return run_eval(eval_embedding, eval_labels, eval_anomalies,
                                        eval_seed);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
