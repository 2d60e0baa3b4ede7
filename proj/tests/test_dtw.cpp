#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <dtwclust/dtw.hpp>

#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using dtwclust::BandInfeasibleError;
using dtwclust::dtw_distance;
using dtwclust::dtw_distance_with_path;
using dtwclust::InstanceTooLargeError;
using dtwclust::InvalidSeriesError;
using dtwclust::SplitMix64;
using dtwclust::TimeSeries;
using dtwclust::WarpStep;
using dtwclust::WarpWindow;
using dtwclust::testing::check_warp_path;
using dtwclust::testing::dtw_brute_force_oracle;
using dtwclust::testing::make_series;
using dtwclust::testing::random_int_series;

namespace {
const WarpWindow kUnlimited = WarpWindow::unlimited();
}

TEST_CASE("dtw cost of identical series is zero") {
  const TimeSeries x = make_series("x", {1, 2, 3});
  REQUIRE(dtw_distance(x, x, kUnlimited) == 0.0);
  REQUIRE(dtw_distance(x, x, WarpWindow::banded(0)) == 0.0);
}

TEST_CASE("dtw cost of two singletons is the squared difference") {
  const TimeSeries x = make_series("x", {0});
  const TimeSeries y = make_series("y", {5});
  REQUIRE(dtw_distance(x, y, kUnlimited) == 25.0);
}

TEST_CASE("one-to-many mapping absorbs a repeated sample") {
  const TimeSeries x = make_series("x", {1, 2, 3});
  const TimeSeries y = make_series("y", {1, 2, 2, 3});
  REQUIRE(dtw_distance(x, y, kUnlimited) == 0.0);
  REQUIRE(dtw_brute_force_oracle(x, y, kUnlimited) == 0.0);
}

TEST_CASE("zero-width band forces the diagonal alignment") {
  const TimeSeries x = make_series("x", {0, 0, 0, 10});
  const TimeSeries y = make_series("y", {10, 0, 0, 0});
  REQUIRE(dtw_distance(x, y, WarpWindow::banded(0)) == 200.0);
  REQUIRE(dtw_brute_force_oracle(x, y, WarpWindow::banded(0)) == 200.0);
  // the endpoint constraint forces both 100-cost corners even without a band
  REQUIRE(dtw_distance(x, y, kUnlimited) ==
          dtw_brute_force_oracle(x, y, kUnlimited));
}

TEST_CASE("invalid series are rejected") {
  const TimeSeries good = make_series("good", {1, 2});
  REQUIRE_THROWS_AS(dtw_distance(make_series("empty", {}), good, kUnlimited),
                    InvalidSeriesError);
  REQUIRE_THROWS_AS(
      dtw_distance(make_series("nan", {1, std::nan("")}), good, kUnlimited),
      InvalidSeriesError);
  REQUIRE_THROWS_AS(
      dtw_distance(make_series("inf", {std::numeric_limits<double>::infinity()}), good,
                   kUnlimited),
      InvalidSeriesError);
}

TEST_CASE("band narrower than the length gap is rejected") {
  const TimeSeries x = make_series("x", {1, 2, 3, 4, 5});
  const TimeSeries y = make_series("y", {1, 2});
  REQUIRE_THROWS_AS(dtw_distance(x, y, WarpWindow::banded(2)), BandInfeasibleError);
  REQUIRE(dtw_distance(x, y, WarpWindow::banded(3)) ==
          dtw_brute_force_oracle(x, y, WarpWindow::banded(3)));
}

TEST_CASE("dtw matches the exhaustive path oracle on random small pairs") {
  SplitMix64 rng(20240601);
  for (int trial = 0; trial < 500; ++trial) {
    const TimeSeries x = random_int_series(rng, 8, -5, 5, "x");
    const TimeSeries y = random_int_series(rng, 8, -5, 5, "y");
    const std::size_t gap =
        x.length() > y.length() ? x.length() - y.length() : y.length() - x.length();
    std::vector<WarpWindow> windows = {kUnlimited};
    for (std::size_t hw : {0, 1, 2}) {
      if (hw >= gap) windows.push_back(WarpWindow::banded(hw));
    }
    const WarpWindow w = windows[rng.next_below(windows.size())];
    INFO("trial " << trial);
    REQUIRE(dtw_distance(x, y, w) == dtw_brute_force_oracle(x, y, w));
  }
}

TEST_CASE("dtw is symmetric and non-negative") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const TimeSeries x = random_int_series(rng, 8, -5, 5, "x");
    const TimeSeries y = random_int_series(rng, 8, -5, 5, "y");
    const double xy = dtw_distance(x, y, kUnlimited);
    REQUIRE(xy >= 0.0);
    REQUIRE(xy == dtw_distance(y, x, kUnlimited));
  }
}

TEST_CASE("cost is non-increasing in the band half-width") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const TimeSeries x = random_int_series(rng, 8, -5, 5, "x");
    const TimeSeries y = random_int_series(rng, 8, -5, 5, "y");
    const std::size_t gap =
        x.length() > y.length() ? x.length() - y.length() : y.length() - x.length();
    const std::size_t saturation = std::max(x.length(), y.length());
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t hw = gap; hw <= saturation; ++hw) {
      const double cost = dtw_distance(x, y, WarpWindow::banded(hw));
      REQUIRE(cost <= previous);
      previous = cost;
    }
    REQUIRE(previous == dtw_distance(x, y, kUnlimited));
  }
}

TEST_CASE("path of two identical two-sample series is the diagonal") {
  const auto [cost, path] =
      dtw_distance_with_path(make_series("x", {1, 2}), make_series("y", {1, 2}), kUnlimited);
  REQUIRE(cost == 0.0);
  REQUIRE(path == dtwclust::WarpPath{{1, 1}, {2, 2}});
}

TEST_CASE("path maps the repeated sample one-to-many") {
  const TimeSeries x = make_series("x", {1, 2, 3});
  const TimeSeries y = make_series("y", {1, 2, 2, 3});
  const auto result = dtw_distance_with_path(x, y, kUnlimited);
  REQUIRE(result.cost == 0.0);
  const auto has = [&](WarpStep step) {
    return std::find(result.path.begin(), result.path.end(), step) != result.path.end();
  };
  REQUIRE(has({2, 2}));
  REQUIRE(has({2, 3}));
  check_warp_path(x, y, kUnlimited, result);
}

TEST_CASE("single-cell path") {
  const auto result =
      dtw_distance_with_path(make_series("x", {0}), make_series("y", {5}), kUnlimited);
  REQUIRE(result.cost == 25.0);
  REQUIRE(result.path == dtwclust::WarpPath{{1, 1}});
}

TEST_CASE("path cost and invariants agree with dtw_distance on random pairs") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const TimeSeries x = random_int_series(rng, 8, -5, 5, "x");
    const TimeSeries y = random_int_series(rng, 8, -5, 5, "y");
    const std::size_t gap =
        x.length() > y.length() ? x.length() - y.length() : y.length() - x.length();
    const WarpWindow w =
        trial % 2 == 0 ? kUnlimited : WarpWindow::banded(gap + rng.next_below(3));
    const auto result = dtw_distance_with_path(x, y, w);
    REQUIRE(result.cost == dtw_distance(x, y, w));
    check_warp_path(x, y, w, result);
  }
}

TEST_CASE("brute-force oracle guard") {
  const TimeSeries x =
      make_series("x", std::vector<double>(9, 1.0));  // 9 * 9 = 81 cells
  REQUIRE_THROWS_AS(dtw_brute_force_oracle(x, x, kUnlimited), InstanceTooLargeError);
  const TimeSeries y = make_series("y", std::vector<double>(8, 1.0));  // 8 * 8 = 64 is fine
  REQUIRE(dtw_brute_force_oracle(y, y, kUnlimited) == 0.0);
}
