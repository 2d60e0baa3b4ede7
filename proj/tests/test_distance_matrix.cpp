#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <dtwclust/distance_matrix.hpp>
#include <dtwclust/kmedoids.hpp>
#include <dtwclust/pairwise.hpp>

#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using dtwclust::BandInfeasibleError;
using dtwclust::BuildStats;
using dtwclust::build_matrix;
using dtwclust::DistanceMatrix;
using dtwclust::DistanceMatrixInvalidError;
using dtwclust::dtw_distance;
using dtwclust::EmptyDatasetError;
using dtwclust::FormatViolationError;
using dtwclust::IndexOutOfRangeError;
using dtwclust::InvalidSeriesError;
using dtwclust::IoFailureError;
using dtwclust::LazyDistanceSource;
using dtwclust::load_matrix;
using dtwclust::save_matrix;
using dtwclust::SplitMix64;
using dtwclust::TimeSeries;
using dtwclust::WarpWindow;
using dtwclust::testing::make_series;
using dtwclust::testing::random_int_series;

namespace {

const WarpWindow kUnlimited = WarpWindow::unlimited();

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "dtwclust_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::vector<TimeSeries> random_dataset(std::uint64_t seed, std::size_t p) {
  SplitMix64 rng(seed);
  std::vector<TimeSeries> dataset;
  dataset.reserve(p);
  for (std::size_t i = 0; i < p; ++i) {
    dataset.push_back(random_int_series(rng, 12, -5, 5, "s" + std::to_string(i)));
  }
  return dataset;
}

}  // namespace

TEST_CASE("single-series dataset yields a 1x1 zero matrix") {
  const std::vector<TimeSeries> dataset = {make_series("only", {1, 2, 3})};
  BuildStats stats;
  const DistanceMatrix m = build_matrix(dataset, kUnlimited, 1, &stats);
  REQUIRE(m.size() == 1);
  REQUIRE(m.distance(0, 0) == 0.0);
  REQUIRE(stats.evaluations == 0);
}

TEST_CASE("matrix entries equal pairwise dtw costs") {
  const std::vector<TimeSeries> dataset = {make_series("a", {1, 2, 3}),
                                           make_series("b", {1, 2, 2, 3})};
  const DistanceMatrix m = build_matrix(dataset, kUnlimited, 1);
  REQUIRE(m.distance(0, 1) == 0.0);
  REQUIRE(m.distance(0, 1) ==
          dtwclust::testing::dtw_brute_force_oracle(dataset[0], dataset[1], kUnlimited));
}

TEST_CASE("build performs exactly p(p-1)/2 evaluations and ignores worker count") {
  const auto dataset = random_dataset(11, 17);
  BuildStats sequential_stats;
  const DistanceMatrix sequential = build_matrix(dataset, kUnlimited, 1, &sequential_stats);
  REQUIRE(sequential_stats.evaluations == 17 * 16 / 2);

  for (unsigned workers : {2u, 3u, 8u, 64u}) {
    BuildStats stats;
    const DistanceMatrix parallel = build_matrix(dataset, kUnlimited, workers, &stats);
    REQUIRE(stats.evaluations == 17 * 16 / 2);
    REQUIRE(parallel.condensed() == sequential.condensed());
  }
}

TEST_CASE("build rejects bad inputs") {
  REQUIRE_THROWS_AS(build_matrix({}, kUnlimited, 1), EmptyDatasetError);
  REQUIRE_THROWS_AS(
      build_matrix({make_series("a", {1}), make_series("a", {2})}, kUnlimited, 1),
      InvalidSeriesError);
  REQUIRE_THROWS_AS(build_matrix({make_series("a", {1}), make_series("b", {})}, kUnlimited, 1),
                    InvalidSeriesError);
}

TEST_CASE("build identifies the first band-infeasible pair") {
  const std::vector<TimeSeries> dataset = {make_series("a", {1, 2}),
                                           make_series("b", {1, 2, 3}),
                                           make_series("c", {1, 2, 3, 4, 5, 6})};
  try {
    build_matrix(dataset, WarpWindow::banded(1), 1);
    FAIL("expected BandInfeasibleError");
  } catch (const BandInfeasibleError& e) {
    REQUIRE(e.has_pair());
    REQUIRE(e.pair_i() == 0);  // (a, c) is the first infeasible pair in row-major order
    REQUIRE(e.pair_j() == 2);
  }
}

TEST_CASE("auto-widen clamps an infeasible band to the length gap") {
  const std::vector<TimeSeries> dataset = {make_series("a", {1, 2}),
                                           make_series("b", {1, 2, 3, 4, 5, 6})};
  const DistanceMatrix widened = build_matrix(dataset, WarpWindow::banded(1), 1, nullptr, true);
  REQUIRE(widened.distance(0, 1) ==
          dtw_distance(dataset[0], dataset[1], WarpWindow::banded(4)));
}

TEST_CASE("lazy source memoizes each pair once") {
  const auto dataset = random_dataset(5, 6);
  LazyDistanceSource lazy(dataset, kUnlimited);

  REQUIRE(lazy.distance(2, 2) == 0.0);
  REQUIRE(lazy.computed_pairs() == 0);

  const double first = lazy.distance(0, 1);
  REQUIRE(lazy.computed_pairs() == 1);
  REQUIRE(lazy.distance(1, 0) == first);
  REQUIRE(lazy.computed_pairs() == 1);

  REQUIRE_THROWS_AS(lazy.distance(0, 6), IndexOutOfRangeError);
}

TEST_CASE("lazy sweep reproduces the built matrix") {
  const auto dataset = random_dataset(17, 9);
  const DistanceMatrix built = build_matrix(dataset, kUnlimited, 2);
  LazyDistanceSource lazy(dataset, kUnlimited);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (std::size_t j = 0; j < dataset.size(); ++j) {
      REQUIRE(lazy.distance(i, j) == built.distance(i, j));
    }
  }
  REQUIRE(lazy.computed_pairs() == DistanceMatrix::condensed_size(dataset.size()));
}

TEST_CASE("k-medoids on a lazy source computes strictly fewer pairs than the full matrix") {
  SplitMix64 rng(2024);
  std::vector<TimeSeries> dataset;
  for (std::size_t i = 0; i < 30; ++i) {
    const double level = static_cast<double>(i % 3) * 40.0;
    dataset.push_back(dtwclust::testing::blob_series(rng, 8, level, 1.0,
                                                     "s" + std::to_string(i)));
  }
  LazyDistanceSource lazy(dataset, kUnlimited);
  dtwclust::KMedoidsConfig config;
  config.k = 3;
  config.restarts = 5;
  config.seed = 7;
  dtwclust::kmedoids(lazy, config);
  REQUIRE(lazy.computed_pairs() < DistanceMatrix::condensed_size(30));
  REQUIRE(lazy.computed_pairs() > 0);
}

TEST_CASE("matrix save/load round-trips exactly") {
  SplitMix64 rng(123);
  const DistanceMatrix m = dtwclust::testing::random_distance_matrix(rng, 7, 0.0, 1e6);
  const auto path = temp_file("roundtrip.txt");
  save_matrix(m, path);
  const DistanceMatrix loaded = load_matrix(path);
  REQUIRE(loaded.size() == m.size());
  REQUIRE(loaded.condensed() == m.condensed());
}

TEST_CASE("load rejects malformed files with the offending line") {
  const auto path = temp_file("bad.txt");
  const auto write_file = [&](const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
  };

  write_file("q=3\n");
  REQUIRE_THROWS_AS(load_matrix(path), FormatViolationError);

  write_file("p=2\n0,1\n");
  try {
    load_matrix(path);
    FAIL("expected FormatViolationError");
  } catch (const FormatViolationError& e) {
    REQUIRE(e.line() == 3);  // missing second row
  }

  write_file("p=2\n0,1\n1,2\n");
  try {
    load_matrix(path);
    FAIL("expected FormatViolationError");
  } catch (const FormatViolationError& e) {
    REQUIRE(e.line() == 3);  // non-zero diagonal
  }

  write_file("p=2\n0,1\n2,0\n");
  REQUIRE_THROWS_AS(load_matrix(path), FormatViolationError);  // asymmetric

  write_file("p=2\n0,1,5\n1,0\n");
  REQUIRE_THROWS_AS(load_matrix(path), FormatViolationError);  // too many cells

  write_file("p=2\n0,x\nx,0\n");
  REQUIRE_THROWS_AS(load_matrix(path), FormatViolationError);  // non-numeric

  write_file("p=2\n0,-1\n-1,0\n");
  REQUIRE_THROWS_AS(load_matrix(path), FormatViolationError);  // negative

  REQUIRE_THROWS_AS(load_matrix(temp_file("does_not_exist.txt")), IoFailureError);
}

TEST_CASE("condensed constructor validates its input") {
  REQUIRE_THROWS_AS(DistanceMatrix::from_condensed(3, {1.0}), DistanceMatrixInvalidError);
  REQUIRE_THROWS_AS(DistanceMatrix::from_condensed(2, {-1.0}), DistanceMatrixInvalidError);
  REQUIRE_THROWS_AS(DistanceMatrix(0), DistanceMatrixInvalidError);
  const DistanceMatrix m = DistanceMatrix::from_condensed(3, {1.0, 2.0, 3.0});
  REQUIRE(m.distance(0, 1) == 1.0);
  REQUIRE(m.distance(0, 2) == 2.0);
  REQUIRE(m.distance(2, 1) == 3.0);
}
