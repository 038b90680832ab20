#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jofc/problem.hpp"
#include "jofc/weights.hpp"

namespace jofc {

/// Headerless CSV matrix, one row per line.
DenseMatrix load_csv_matrix(const std::string& path);
void save_csv_matrix(const std::string& path, const DenseMatrix& matrix);

/// Dissimilarity ingestion: symmetry enforced by averaging within a 1e-9
/// relative tolerance, diagonals forced to zero with a warning, negative
/// entries rejected with the offending file and index. Accepts one CSV per
/// modality or a single .jofc binary problem file.
OmnibusProblem load_dissimilarities(const std::vector<std::string>& paths);

/// Compact binary container ("JOFC" magic, u32 version, u32 n, m, d, then
/// little-endian doubles). d == 0 marks a problem (m n x n matrices);
/// d > 0 marks an embedding (m n x d blocks).
void save_problem_binary(const std::string& path, const OmnibusProblem& problem);
OmnibusProblem load_problem_binary(const std::string& path);

/// Embeddings: .jofc binary, or CSV whose first line is "m,n,d" followed by
/// the stacked rows. Chosen by file extension.
void save_embedding(const std::string& path, const Configuration& config);
Configuration load_embedding(const std::string& path);

std::vector<int> load_labels(const std::string& path);
void save_labels(const std::string& path, const std::vector<int>& labels);
std::vector<std::size_t> load_indices(const std::string& path);
void save_indices(const std::string& path, const std::vector<std::size_t>& indices);

/// One delta vector (length n) per modality, each file a single CSV column.
std::vector<std::vector<double>> load_delta_vectors(const std::vector<std::string>& paths);

enum class Algorithm { fjofc, jofc_reference };

/// Declarative run description for `embed`: key = value lines, '#' comments.
/// Exactly one of `inputs` / `generator` must be present.
struct RunConfig {
  std::vector<std::string> inputs;
  std::optional<std::string> generator;  // "matched" | "anomaly"
  std::size_t n = 400, m = 3, dim = 2, n_anom = 10;

  WeightSpec weights = WeightSpec::uniform(1.0);
  std::size_t d = 2;
  double eps = 1e-6;
  std::size_t max_iterations = 1000;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::fjofc;
  InitKind init = InitKind::averaged_procrustes;
  bool init_explicit = false;  // whether the config file chose an init
  bool normalize = false;
  bool parallel = false;
  std::string out;
};

RunConfig parse_run_config(const std::string& path);

}  // namespace jofc
