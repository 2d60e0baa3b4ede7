#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "csv.hpp"
#include "distance_matrix.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "kmedoids.hpp"
#include "pairwise.hpp"
#include "validation.hpp"

namespace dtwclust {

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  bool label_column = false;
  std::optional<char> delimiter;
  std::optional<std::size_t> k;
  std::optional<std::pair<std::size_t, std::size_t>> k_range;
  ClusterMethod method = ClusterMethod::KMedoids;
  WarpWindow window = WarpWindow::unlimited();
  bool auto_widen = false;
  unsigned workers = 1;
  std::size_t restarts = 10;
  std::size_t max_iterations = 100;
  std::uint64_t seed = 0;
  bool scores = false;
  std::optional<std::filesystem::path> save_matrix_path;
  std::optional<std::filesystem::path> load_matrix_path;
  bool normalize = false;
  std::filesystem::path out_dir = ".";
  ExactOptions exact;
};

struct PhaseSeconds {
  double ingest = 0.0;
  double matrix = 0.0;
  double cluster = 0.0;
  double scores = 0.0;
};

struct RunSummary {
  std::string dataset;
  std::size_t p = 0;
  std::size_t length_min = 0;
  std::size_t length_max = 0;
  double length_median = 0.0;
  std::string method;
  std::optional<std::size_t> k;
  std::optional<std::pair<std::size_t, std::size_t>> k_range;
  std::optional<double> total_cost;
  std::optional<std::string> certificate;
  PhaseSeconds phases;
  std::uint64_t computed_pairs = 0;
};

namespace detail {

class PhaseTimer {
 public:
  PhaseTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void z_normalize(std::vector<TimeSeries>& dataset) {
  for (TimeSeries& series : dataset) {
    const double n = static_cast<double>(series.samples.size());
    double mean = 0.0;
    for (double v : series.samples) mean += v;
    mean /= n;
    double variance = 0.0;
    for (double v : series.samples) variance += (v - mean) * (v - mean);
    const double stddev = std::sqrt(variance / n);
    for (double& v : series.samples) {
      v = stddev > 0.0 ? (v - mean) / stddev : 0.0;  // constant series map to zeros
    }
  }
}

inline void check_config(const RunConfig& config) {
  if (config.inputs.empty()) throw InvalidArgumentsError("at least one --input file is required");
  if (config.k.has_value() == config.k_range.has_value()) {
    throw InvalidArgumentsError("exactly one of --k and --k-range is required");
  }
  if (config.k_range) {
    if (config.k_range->first > config.k_range->second) {
      throw InvalidArgumentsError("--k-range bounds must satisfy a <= b");
    }
    if (!config.scores) {
      throw InvalidArgumentsError("--k-range explores k via the elbow curve; add --scores");
    }
  }
  if (config.workers == 0) throw InvalidArgumentsError("workers must be >= 1");
  if (config.restarts == 0) throw InvalidArgumentsError("restarts must be >= 1");
  if (config.max_iterations == 0) throw InvalidArgumentsError("max-iter must be >= 1");
}

struct Execution {
  std::vector<TimeSeries> dataset;
  std::optional<DistanceMatrix> matrix;
  std::optional<ClusterResult> result;
  std::optional<ScoreReport> scores;
  RunSummary summary;
};

inline Execution execute(const RunConfig& config) {
  check_config(config);

  Execution exec;
  RunSummary& summary = exec.summary;
  summary.method = to_string(config.method);

  {
    PhaseTimer timer;
    CsvFormat format;
    format.label_column = config.label_column;
    format.delimiter = config.delimiter;
    exec.dataset = ingest(config.inputs, format);
    if (config.normalize) z_normalize(exec.dataset);
    summary.phases.ingest = timer.seconds();
  }

  const std::size_t p = exec.dataset.size();
  summary.p = p;
  summary.dataset = config.inputs.front().stem().string();
  if (config.inputs.size() > 1) {
    summary.dataset += "+" + std::to_string(config.inputs.size() - 1);
  }
  {
    std::vector<std::size_t> lengths(p);
    for (std::size_t i = 0; i < p; ++i) lengths[i] = exec.dataset[i].length();
    std::sort(lengths.begin(), lengths.end());
    summary.length_min = lengths.front();
    summary.length_max = lengths.back();
    summary.length_median =
        p % 2 == 1 ? static_cast<double>(lengths[p / 2])
                   : (static_cast<double>(lengths[p / 2 - 1]) + static_cast<double>(lengths[p / 2])) / 2.0;
  }

  std::vector<std::size_t> ks;
  if (config.k) {
    summary.k = *config.k;
    ks.push_back(*config.k);
  } else {
    summary.k_range = config.k_range;
    for (std::size_t k = config.k_range->first; k <= config.k_range->second; ++k) ks.push_back(k);
  }
  for (std::size_t k : ks) {
    if (k < 1 || k > p) throw KOutOfRangeError(k, p);
  }

  const bool need_matrix = config.method == ClusterMethod::Exact || config.scores ||
                           config.save_matrix_path.has_value() || config.k_range.has_value() ||
                           config.load_matrix_path.has_value();
  std::optional<LazyDistanceSource> lazy;
  {
    PhaseTimer timer;
    if (config.load_matrix_path) {
      exec.matrix = load_matrix(*config.load_matrix_path);
      if (exec.matrix->size() != p) {
        throw InvalidArgumentsError("loaded matrix covers " +
                                    std::to_string(exec.matrix->size()) + " series, dataset has " +
                                    std::to_string(p));
      }
    } else if (need_matrix) {
      BuildStats stats;
      exec.matrix =
          build_matrix(exec.dataset, config.window, config.workers, &stats, config.auto_widen);
      summary.computed_pairs = stats.evaluations;
    } else {
      lazy.emplace(exec.dataset, config.window, config.auto_widen);
    }
    if (config.save_matrix_path && exec.matrix) {
      save_matrix(*exec.matrix, *config.save_matrix_path);
    }
    summary.phases.matrix = timer.seconds();
  }

  KMedoidsConfig kconfig;
  kconfig.restarts = config.restarts;
  kconfig.max_iterations = config.max_iterations;
  kconfig.seed = config.seed;

  std::vector<std::pair<std::size_t, double>> elbow;
  {
    PhaseTimer timer;
    if (config.k) {
      kconfig.k = *config.k;
      if (config.method == ClusterMethod::Exact) {
        exec.result = solve_exact(*exec.matrix, *config.k, config.exact);
      } else if (exec.matrix) {
        exec.result = kmedoids(*exec.matrix, kconfig);
      } else {
        exec.result = kmedoids(*lazy, kconfig);
      }
      summary.total_cost = exec.result->total_cost;
      summary.certificate = to_string(exec.result->certificate);
    } else {
      elbow = elbow_curve(*exec.matrix, ks, config.method, kconfig, config.exact);
    }
    summary.phases.cluster = timer.seconds();
  }

  if (config.scores) {
    PhaseTimer timer;
    ScoreReport report;
    if (exec.result) {
      report = silhouette_scores(*exec.matrix, *exec.result);
      report.elbow = {{*config.k, exec.result->total_cost}};
    } else {
      report.elbow = std::move(elbow);
    }
    exec.scores = std::move(report);
    summary.phases.scores = timer.seconds();
  }

  if (lazy) summary.computed_pairs = lazy->computed_pairs();
  return exec;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailureError("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoFailureError("failed writing '" + path.string() + "'");
}

inline nlohmann::json summary_to_json(const RunSummary& summary) {
  nlohmann::json j;
  j["dataset"] = summary.dataset;
  j["p"] = summary.p;
  j["length_min"] = summary.length_min;
  j["length_median"] = summary.length_median;
  j["length_max"] = summary.length_max;
  j["method"] = summary.method;
  if (summary.k) j["k"] = *summary.k;
  if (summary.k_range) {
    j["k_range"] = std::to_string(summary.k_range->first) + ".." +
                   std::to_string(summary.k_range->second);
  }
  if (summary.total_cost) j["total_cost"] = *summary.total_cost;
  if (summary.certificate) j["certificate"] = *summary.certificate;
  j["phase_ingest_s"] = summary.phases.ingest;
  j["phase_matrix_s"] = summary.phases.matrix;
  j["phase_cluster_s"] = summary.phases.cluster;
  j["phase_scores_s"] = summary.phases.scores;
  j["computed_pairs"] = summary.computed_pairs;
  return j;
}

inline void write_outputs(const RunConfig& config, const Execution& exec) {
  std::filesystem::create_directories(config.out_dir);

  if (exec.result) {
    const std::filesystem::path assignments_path = config.out_dir / "assignments.csv";
    std::ofstream assignments = open_output(assignments_path);
    assignments << "series_id,medoid_id\n";
    for (std::size_t j = 0; j < exec.dataset.size(); ++j) {
      assignments << exec.dataset[j].id << ',' << exec.dataset[exec.result->assignment[j]].id
                  << "\n";
    }
    finish_output(assignments, assignments_path);

    const std::filesystem::path medoids_path = config.out_dir / "medoids.csv";
    std::ofstream medoids = open_output(medoids_path);
    medoids << "medoid_id\n";
    for (std::size_t m : exec.result->medoids) medoids << exec.dataset[m].id << "\n";
    finish_output(medoids, medoids_path);
  }

  const std::filesystem::path summary_path = config.out_dir / "summary.json";
  std::ofstream summary = open_output(summary_path);
  summary << summary_to_json(exec.summary).dump(2) << "\n";
  finish_output(summary, summary_path);

  if (exec.scores) {
    const std::filesystem::path scores_path = config.out_dir / "scores.csv";
    std::ofstream scores = open_output(scores_path);
    if (!exec.scores->silhouette.empty()) {
      scores << "series_id,silhouette\n";
      for (std::size_t j = 0; j < exec.dataset.size(); ++j) {
        scores << exec.dataset[j].id << ',' << format_double(exec.scores->silhouette[j]) << "\n";
      }
      scores << "\n";
    }
    scores << "k,cost\n";
    for (const auto& [k, cost] : exec.scores->elbow) {
      scores << k << ',' << format_double(cost) << "\n";
    }
    finish_output(scores, scores_path);
  }
}

}  // namespace detail

/// Full pipeline: ingest -> distance matrix (or lazy source) -> clustering ->
/// optional scores -> output files in the configured directory.
inline RunSummary run(const RunConfig& config) {
  detail::Execution exec = detail::execute(config);
  detail::write_outputs(config, exec);
  return exec.summary;
}

struct BenchReport {
  std::string dataset;
  std::size_t p = 0;
  std::string method;
  std::optional<std::size_t> k;
  std::string certificate;
  std::size_t repetitions = 0;
  PhaseSeconds median;
  std::vector<PhaseSeconds> runs;
  std::uint64_t computed_pairs = 0;
};

namespace detail {

inline double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace detail

/// Repeats the pipeline without writing per-run outputs and reports the
/// median wall time of each phase, both returned and saved to bench.json.
inline BenchReport bench(const RunConfig& config, std::size_t repetitions) {
  if (repetitions < 1) throw InvalidArgumentsError("repetitions must be >= 1");

  BenchReport report;
  report.repetitions = repetitions;
  std::vector<double> ingest_s, matrix_s, cluster_s, scores_s;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    detail::Execution exec = detail::execute(config);
    report.runs.push_back(exec.summary.phases);
    ingest_s.push_back(exec.summary.phases.ingest);
    matrix_s.push_back(exec.summary.phases.matrix);
    cluster_s.push_back(exec.summary.phases.cluster);
    scores_s.push_back(exec.summary.phases.scores);
    if (rep == 0) {
      report.dataset = exec.summary.dataset;
      report.p = exec.summary.p;
      report.method = exec.summary.method;
      report.k = exec.summary.k;
      report.certificate = exec.summary.certificate.value_or("");
      report.computed_pairs = exec.summary.computed_pairs;
    }
  }
  report.median = PhaseSeconds{detail::median_of(ingest_s), detail::median_of(matrix_s),
                               detail::median_of(cluster_s), detail::median_of(scores_s)};

  std::filesystem::create_directories(config.out_dir);
  nlohmann::json j;
  j["dataset"] = report.dataset;
  j["p"] = report.p;
  j["method"] = report.method;
  if (report.k) j["k"] = *report.k;
  j["certificate"] = report.certificate;
  j["repetitions"] = report.repetitions;
  j["median_ingest_s"] = report.median.ingest;
  j["median_matrix_s"] = report.median.matrix;
  j["median_cluster_s"] = report.median.cluster;
  j["median_scores_s"] = report.median.scores;
  j["computed_pairs"] = report.computed_pairs;
  nlohmann::json runs = nlohmann::json::array();
  for (const PhaseSeconds& phases : report.runs) {
    runs.push_back({{"ingest_s", phases.ingest},
                    {"matrix_s", phases.matrix},
                    {"cluster_s", phases.cluster},
                    {"scores_s", phases.scores}});
  }
  j["runs"] = runs;

  const std::filesystem::path bench_path = config.out_dir / "bench.json";
  std::ofstream out = detail::open_output(bench_path);
  out << j.dump(2) << "\n";
  detail::finish_output(out, bench_path);
  return report;
}

}  // namespace dtwclust
