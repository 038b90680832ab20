#include "jofc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace jofc {

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream stream(s);
  while (std::getline(stream, token, sep)) out.push_back(trim(token));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_double(const std::string& token, const std::string& where) {
  const std::string t = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    fail(where + ": cannot parse number '" + t + "'");
  return value;
}

std::uint64_t parse_u64(const std::string& token, const std::string& where) {
  const std::string t = trim(token);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    fail(where + ": cannot parse integer '" + t + "'");
  return value;
}

bool parse_bool(const std::string& token, const std::string& where) {
  const std::string t = trim(token);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  fail(where + ": cannot parse boolean '" + t + "'");
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_double_17g(std::FILE* f, double v) {
  std::fprintf(f, "%.17g", v);
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_or_fail(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) fail("cannot open '" + path + "'");
  return f;
}

constexpr std::uint32_t kBinaryVersion = 1;

void write_binary(const std::string& path, std::uint32_t n, std::uint32_t m,
                  std::uint32_t d, const std::vector<const DenseMatrix*>& payload) {
  FilePtr f = open_or_fail(path, "wb");
  std::fwrite("JOFC", 1, 4, f.get());
  const std::uint32_t header[4] = {kBinaryVersion, n, m, d};
  std::fwrite(header, sizeof(std::uint32_t), 4, f.get());
  for (const DenseMatrix* block : payload)
    std::fwrite(block->data(), sizeof(double), block->size(), f.get());
}

struct BinaryFile {
  std::uint32_t n = 0, m = 0, d = 0;
  std::vector<DenseMatrix> blocks;
};

BinaryFile read_binary(const std::string& path) {
  FilePtr f = open_or_fail(path, "rb");
  char magic[4] = {};
  if (std::fread(magic, 1, 4, f.get()) != 4 || std::memcmp(magic, "JOFC", 4) != 0)
    fail("'" + path + "': not a JOFC binary file");
  std::uint32_t header[4] = {};
  if (std::fread(header, sizeof(std::uint32_t), 4, f.get()) != 4)
    fail("'" + path + "': truncated header");
  if (header[0] != kBinaryVersion)
    fail("'" + path + "': unsupported version " + std::to_string(header[0]));

  BinaryFile out;
  out.n = header[1];
  out.m = header[2];
  out.d = header[3];
  const std::size_t rows = out.n;
  const std::size_t cols = (out.d == 0) ? out.n : out.d;
  for (std::uint32_t b = 0; b < out.m; ++b) {
    DenseMatrix block(rows, cols);
    if (std::fread(block.data(), sizeof(double), block.size(), f.get()) != block.size())
      fail("'" + path + "': truncated payload");
    out.blocks.push_back(std::move(block));
  }
  return out;
}

}  // namespace

DenseMatrix load_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::vector<double> row;
    for (const std::string& token : split(t, ','))
      row.push_back(parse_double(token, "'" + path + "' line " + std::to_string(lineno)));
    if (!rows.empty() && row.size() != rows.front().size())
      fail("'" + path + "' line " + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail("'" + path + "': empty matrix");

  DenseMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

void save_csv_matrix(const std::string& path, const DenseMatrix& matrix) {
  FilePtr f = open_or_fail(path, "w");
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      if (j) std::fputc(',', f.get());
      write_double_17g(f.get(), matrix(i, j));
    }
    std::fputc('\n', f.get());
  }
}

OmnibusProblem load_dissimilarities(const std::vector<std::string>& paths) {
  if (paths.empty()) fail("load_dissimilarities: no input files");

  std::vector<DenseMatrix> raw;
  if (paths.size() == 1 && has_suffix(paths.front(), ".jofc")) {
    BinaryFile file = read_binary(paths.front());
    if (file.d != 0) fail("'" + paths.front() + "': file holds an embedding, not a problem");
    raw = std::move(file.blocks);
  } else {
    for (const auto& path : paths) raw.push_back(load_csv_matrix(path));
  }

  std::size_t n = 0;
  for (std::size_t f = 0; f < raw.size(); ++f) {
    DenseMatrix& delta = raw[f];
    const std::string name = (f < paths.size()) ? paths[f] : paths.front();
    if (!is_square(delta))
      fail("'" + name + "': matrix is " + std::to_string(delta.rows()) + "x" +
           std::to_string(delta.cols()) + ", expected square");
    if (f == 0)
      n = delta.rows();
    else if (delta.rows() != n)
      fail("'" + name + "': size " + std::to_string(delta.rows()) +
           " differs from earlier modalities (" + std::to_string(n) + ")");

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double v = delta(i, j);
        if (!std::isfinite(v))
          fail("'" + name + "': non-finite entry at (" + std::to_string(i) + "," +
               std::to_string(j) + ")");
        if (v < 0.0)
          fail("'" + name + "': negative entry " + std::to_string(v) + " at (" +
               std::to_string(i) + "," + std::to_string(j) + ")");
      }

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double a = delta(i, j), b = delta(j, i);
        const double tol = 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
        if (std::abs(a - b) > tol)
          fail("'" + name + "': asymmetry beyond tolerance at (" + std::to_string(i) +
               "," + std::to_string(j) + ")");
        const double avg = 0.5 * a + 0.5 * b;  // no overflow near DBL_MAX
        delta(i, j) = delta(j, i) = avg;
      }

    for (std::size_t i = 0; i < n; ++i) {
      if (delta(i, i) != 0.0) {
        std::cerr << "warning: '" << name << "' diagonal entry (" << i << "," << i
                  << ") = " << delta(i, i) << " forced to 0\n";
        delta(i, i) = 0.0;
      }
    }
  }
  return OmnibusProblem(std::move(raw));
}

void save_problem_binary(const std::string& path, const OmnibusProblem& problem) {
  std::vector<const DenseMatrix*> payload;
  for (std::size_t i = 0; i < problem.modality_count(); ++i)
    payload.push_back(&problem.modality(i));
  write_binary(path, static_cast<std::uint32_t>(problem.object_count()),
               static_cast<std::uint32_t>(problem.modality_count()), 0, payload);
}

OmnibusProblem load_problem_binary(const std::string& path) {
  BinaryFile file = read_binary(path);
  if (file.d != 0) fail("'" + path + "': file holds an embedding, not a problem");
  return OmnibusProblem(std::move(file.blocks));
}

void save_embedding(const std::string& path, const Configuration& config) {
  if (has_suffix(path, ".jofc")) {
    std::vector<const DenseMatrix*> payload;
    for (const auto& block : config.blocks) payload.push_back(&block);
    write_binary(path, static_cast<std::uint32_t>(config.object_count()),
                 static_cast<std::uint32_t>(config.modality_count()),
                 static_cast<std::uint32_t>(config.dim()), payload);
    return;
  }
  FilePtr f = open_or_fail(path, "w");
  std::fprintf(f.get(), "%zu,%zu,%zu\n", config.modality_count(), config.object_count(),
               config.dim());
  for (const auto& block : config.blocks)
    for (std::size_t i = 0; i < block.rows(); ++i) {
      for (std::size_t j = 0; j < block.cols(); ++j) {
        if (j) std::fputc(',', f.get());
        write_double_17g(f.get(), block(i, j));
      }
      std::fputc('\n', f.get());
    }
}

Configuration load_embedding(const std::string& path) {
  if (has_suffix(path, ".jofc")) {
    BinaryFile file = read_binary(path);
    if (file.d == 0) fail("'" + path + "': file holds a problem, not an embedding");
    Configuration config;
    config.blocks = std::move(file.blocks);
    return config;
  }
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::string header;
  if (!std::getline(in, header)) fail("'" + path + "': empty embedding file");
  const auto dims = split(trim(header), ',');
  if (dims.size() != 3) fail("'" + path + "': embedding header must be m,n,d");
  const std::size_t m = parse_u64(dims[0], path);
  const std::size_t n = parse_u64(dims[1], path);
  const std::size_t d = parse_u64(dims[2], path);

  Configuration config;
  config.blocks.assign(m, DenseMatrix(n, d));
  std::string line;
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::getline(in, line)) fail("'" + path + "': truncated embedding");
      const auto tokens = split(trim(line), ',');
      if (tokens.size() != d) fail("'" + path + "': wrong column count");
      for (std::size_t j = 0; j < d; ++j)
        config.blocks[b](i, j) = parse_double(tokens[j], path);
    }
  return config;
}

std::vector<int> load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::vector<int> labels;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    labels.push_back(static_cast<int>(parse_u64(t, path)));
  }
  if (labels.empty()) fail("'" + path + "': no labels");
  return labels;
}

void save_labels(const std::string& path, const std::vector<int>& labels) {
  FilePtr f = open_or_fail(path, "w");
  for (int l : labels) std::fprintf(f.get(), "%d\n", l);
}

std::vector<std::size_t> load_indices(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::vector<std::size_t> indices;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    indices.push_back(parse_u64(t, path));
  }
  return indices;
}

void save_indices(const std::string& path, const std::vector<std::size_t>& indices) {
  FilePtr f = open_or_fail(path, "w");
  for (std::size_t i : indices) std::fprintf(f.get(), "%zu\n", i);
}

std::vector<std::vector<double>> load_delta_vectors(const std::vector<std::string>& paths) {
  std::vector<std::vector<double>> out;
  for (const auto& path : paths) {
    const DenseMatrix m = load_csv_matrix(path);
    std::vector<double> delta;
    if (m.cols() == 1) {
      for (std::size_t i = 0; i < m.rows(); ++i) delta.push_back(m(i, 0));
    } else if (m.rows() == 1) {
      for (std::size_t j = 0; j < m.cols(); ++j) delta.push_back(m(0, j));
    } else {
      fail("'" + path + "': delta file must be a single row or column");
    }
    out.push_back(std::move(delta));
  }
  return out;
}

RunConfig parse_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");

  RunConfig config;
  bool have_inputs = false, have_generator = false;
  std::string weight_kind = "uniform", weight_matrix_path;
  std::vector<double> within;
  double w = 1.0, c = 1.0;

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
      fail("'" + path + "' line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const std::string where = "'" + path + "' key " + key;

    if (key == "inputs") {
      config.inputs = split(value, ',');
      have_inputs = true;
    } else if (key == "generator") {
      if (value != "matched" && value != "anomaly")
        fail(where + ": expected matched|anomaly");
      config.generator = value;
      have_generator = true;
    } else if (key == "n") {
      config.n = parse_u64(value, where);
    } else if (key == "m") {
      config.m = parse_u64(value, where);
    } else if (key == "dim") {
      config.dim = parse_u64(value, where);
    } else if (key == "n_anom") {
      config.n_anom = parse_u64(value, where);
    } else if (key == "weight") {
      if (value != "uniform" && value != "general" && value != "product")
        fail(where + ": expected uniform|general|product");
      weight_kind = value;
    } else if (key == "w") {
      w = parse_double(value, where);
    } else if (key == "c") {
      c = parse_double(value, where);
    } else if (key == "within") {
      within.clear();
      for (const std::string& token : split(value, ','))
        within.push_back(parse_double(token, where));
    } else if (key == "weight_matrix") {
      weight_matrix_path = value;
    } else if (key == "d") {
      config.d = parse_u64(value, where);
    } else if (key == "eps") {
      config.eps = parse_double(value, where);
    } else if (key == "max_iterations") {
      config.max_iterations = parse_u64(value, where);
    } else if (key == "seed") {
      config.seed = parse_u64(value, where);
    } else if (key == "algorithm") {
      if (value == "fjofc")
        config.algorithm = Algorithm::fjofc;
      else if (value == "jofc")
        config.algorithm = Algorithm::jofc_reference;
      else
        fail(where + ": expected fjofc|jofc");
    } else if (key == "init") {
      if (value == "averaged")
        config.init = InitKind::averaged_procrustes;
      else if (value == "imputed")
        config.init = InitKind::imputed_cmds;
      else
        fail(where + ": expected averaged|imputed");
      config.init_explicit = true;
    } else if (key == "normalize") {
      config.normalize = parse_bool(value, where);
    } else if (key == "parallel") {
      config.parallel = parse_bool(value, where);
    } else if (key == "out") {
      config.out = value;
    } else {
      fail("'" + path + "' line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }

  if (have_inputs == have_generator)
    fail("'" + path + "': exactly one of inputs/generator must be present");

  if (weight_kind == "uniform") {
    config.weights = WeightSpec::uniform(w);
  } else if (weight_kind == "product") {
    if (within.empty()) fail("'" + path + "': product weights need 'within'");
    config.weights = WeightSpec::product(within, c);
  } else {
    if (weight_matrix_path.empty())
      fail("'" + path + "': general weights need 'weight_matrix'");
    config.weights = WeightSpec::general(load_csv_matrix(weight_matrix_path));
  }
  return config;
}

}  // namespace jofc
