#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <dtwclust/dtwclust.hpp>

namespace {

dtwclust::WarpWindow parse_window(const std::string& text) {
  if (text == "unlimited") return dtwclust::WarpWindow::unlimited();
  try {
    const long long value = std::stoll(text);
    if (value < 0) throw std::invalid_argument("negative");
    return dtwclust::WarpWindow::banded(static_cast<std::size_t>(value));
  } catch (const std::exception&) {
    throw dtwclust::InvalidArgumentsError("--window expects a non-negative integer or 'unlimited', got '" +
                                          text + "'");
  }
}

std::pair<std::size_t, std::size_t> parse_k_range(const std::string& text) {
  const std::size_t sep = text.find("..");
  if (sep != std::string::npos) {
    try {
      const long long a = std::stoll(text.substr(0, sep));
      const long long b = std::stoll(text.substr(sep + 2));
      if (a >= 1 && b >= a) return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
    } catch (const std::exception&) {
    }
  }
  throw dtwclust::InvalidArgumentsError("--k-range expects '<a>..<b>' with 1 <= a <= b, got '" +
                                        text + "'");
}

void print_summary(const dtwclust::RunSummary& summary) {
  std::printf("dataset        %s (p=%zu, lengths %zu/%.1f/%zu)\n", summary.dataset.c_str(),
              summary.p, summary.length_min, summary.length_median, summary.length_max);
  if (summary.k) {
    std::printf("method         %s, k=%zu\n", summary.method.c_str(), *summary.k);
  } else {
    std::printf("method         %s, k=%zu..%zu\n", summary.method.c_str(),
                summary.k_range->first, summary.k_range->second);
  }
  if (summary.total_cost) std::printf("total cost     %.17g\n", *summary.total_cost);
  if (summary.certificate) std::printf("certificate    %s\n", summary.certificate->c_str());
  std::printf("computed pairs %llu\n", static_cast<unsigned long long>(summary.computed_pairs));
  std::printf("phases (s)     ingest %.3f | matrix %.3f | cluster %.3f | scores %.3f\n",
              summary.phases.ingest, summary.phases.matrix, summary.phases.cluster,
              summary.phases.scores);
}

void print_bench(const dtwclust::BenchReport& report) {
  std::printf("bench: %s, method=%s%s, p=%zu, reps=%zu%s%s\n", report.dataset.c_str(),
              report.method.c_str(), report.k ? (", k=" + std::to_string(*report.k)).c_str() : "",
              report.p, report.repetitions,
              report.certificate.empty() ? "" : ", certificate=", report.certificate.c_str());
  std::printf("%-10s %12s\n", "phase", "median (s)");
  std::printf("%-10s %12.4f\n", "ingest", report.median.ingest);
  std::printf("%-10s %12.4f\n", "matrix", report.median.matrix);
  std::printf("%-10s %12.4f\n", "cluster", report.median.cluster);
  std::printf("%-10s %12.4f\n", "scores", report.median.scores);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster time series by dynamic-time-warping distance"};

  std::vector<std::string> inputs;
  bool labels = false;
  std::string delimiter;
  std::optional<long long> k;
  std::string k_range;
  std::string method = "kmedoids";
  std::string window = "unlimited";
  bool auto_widen = false;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::size_t restarts = 10;
  std::size_t max_iter = 100;
  std::uint64_t seed = 0;
  bool scores = false;
  std::string save_matrix_path;
  std::string load_matrix_path;
  bool normalize = false;
  std::string out_dir = ".";
  std::optional<std::size_t> bench_reps;

  app.add_option("--input", inputs, "Input CSV file(s), one series per row")
      ->required()
      ->expected(-1);
  app.add_flag("--labels", labels, "Drop the first column of every row (class label)");
  app.add_option("--delimiter", delimiter, "Single-character cell delimiter (default ,; tab for .tsv)");
  auto* k_opt = app.add_option("--k", k, "Number of clusters");
  auto* k_range_opt =
      app.add_option("--k-range", k_range, "Range of cluster counts '<a>..<b>' for the elbow curve");
  k_opt->excludes(k_range_opt);
  app.add_option("--method", method, "Clustering method: exact | kmedoids")
      ->check(CLI::IsMember({"exact", "kmedoids"}));
  app.add_option("--window", window, "Warping window half-width: <int> | unlimited");
  app.add_flag("--auto-widen", auto_widen,
               "Widen an infeasible band to each pair's length gap instead of failing");
  app.add_option("--workers", workers, "Parallel workers for the distance matrix build");
  app.add_option("--restarts", restarts, "k-medoids restarts");
  app.add_option("--max-iter", max_iter, "k-medoids iteration cap per restart");
  app.add_option("--seed", seed, "Seed for the k-medoids generator");
  app.add_flag("--scores", scores, "Write silhouette and elbow scores");
  app.add_option("--save-matrix", save_matrix_path, "Write the distance matrix to this path");
  app.add_option("--load-matrix", load_matrix_path, "Reuse a previously saved distance matrix");
  app.add_flag("--normalize", normalize, "Z-normalize every series before clustering");
  app.add_option("--out", out_dir, "Output directory (default: current directory)");
  app.add_option("--bench", bench_reps, "Benchmark mode: repeat the pipeline this many times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(dtwclust::ErrorCode::InvalidArguments);
  }

  try {
    dtwclust::RunConfig config;
    for (const std::string& path : inputs) config.inputs.emplace_back(path);
    config.label_column = labels;
    if (!delimiter.empty()) {
      if (delimiter.size() != 1) {
        throw dtwclust::InvalidArgumentsError("--delimiter must be a single character");
      }
      config.delimiter = delimiter[0];
    }
    if (k) {
      if (*k < 1) throw dtwclust::InvalidArgumentsError("--k must be >= 1");
      config.k = static_cast<std::size_t>(*k);
    }
    if (!k_range.empty()) config.k_range = parse_k_range(k_range);
    config.method =
        method == "exact" ? dtwclust::ClusterMethod::Exact : dtwclust::ClusterMethod::KMedoids;
    config.window = parse_window(window);
    config.auto_widen = auto_widen;
    config.workers = workers;
    config.restarts = restarts;
    config.max_iterations = max_iter;
    config.seed = seed;
    config.scores = scores;
    if (!save_matrix_path.empty()) config.save_matrix_path = save_matrix_path;
    if (!load_matrix_path.empty()) config.load_matrix_path = load_matrix_path;
    config.normalize = normalize;
    config.out_dir = out_dir;

    if (bench_reps) {
      print_bench(dtwclust::bench(config, *bench_reps));
    } else {
      print_summary(dtwclust::run(config));
    }
    return 0;
  } catch (const dtwclust::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
