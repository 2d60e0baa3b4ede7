#pragma once

// Seeded instance generators shared by the unit and acceptance suites.

#include <cstdint>
#include <string>
#include <vector>

#include <dtwclust/distance_matrix.hpp>
#include <dtwclust/dtw.hpp>
#include <dtwclust/rng.hpp>
#include <dtwclust/time_series.hpp>
#include <dtwclust/warp_window.hpp>

namespace dtwclust::testing {

inline TimeSeries make_series(std::string id, std::vector<double> samples) {
  return TimeSeries{std::move(id), std::move(samples)};
}

/// Series of integer samples in [low, high], length in [1, max_length].
inline TimeSeries random_int_series(SplitMix64& rng, std::size_t max_length, int low, int high,
                                    const std::string& id) {
  const std::size_t length = 1 + rng.next_below(max_length);
  std::vector<double> samples(length);
  const auto span = static_cast<std::uint64_t>(high - low + 1);
  for (double& v : samples) v = static_cast<double>(low + static_cast<int>(rng.next_below(span)));
  return {id, std::move(samples)};
}

/// Random-walk series with unit-scale steps.
inline TimeSeries random_walk_series(SplitMix64& rng, std::size_t length, const std::string& id,
                                     double start = 0.0) {
  std::vector<double> samples(length);
  double level = start;
  for (double& v : samples) {
    level += rng.next_double() * 2.0 - 1.0;
    v = level;
  }
  return {id, std::move(samples)};
}

/// Near-constant series around `level` with +-jitter noise.
inline TimeSeries blob_series(SplitMix64& rng, std::size_t length, double level, double jitter,
                              const std::string& id) {
  std::vector<double> samples(length);
  for (double& v : samples) v = level + (rng.next_double() * 2.0 - 1.0) * jitter;
  return {id, std::move(samples)};
}

/// Symmetric matrix with uniform entries in [low, high).
inline DistanceMatrix random_distance_matrix(SplitMix64& rng, std::size_t p, double low = 0.1,
                                             double high = 10.0) {
  std::vector<double> values(DistanceMatrix::condensed_size(p));
  for (double& v : values) v = low + rng.next_double() * (high - low);
  return DistanceMatrix::from_condensed(p, std::move(values));
}

/// Checks every warping-path invariant: endpoints, step shape, and that the
/// path cost reproduces the claimed cost.
inline void check_warp_path(const TimeSeries& x, const TimeSeries& y, const WarpWindow& w,
                            const PathResult& result) {
  const std::size_t n = x.length();
  const std::size_t m = y.length();
  if (result.path.empty()) throw std::logic_error("empty path");
  if (result.path.front() != WarpStep{1, 1}) throw std::logic_error("path must start at (1, 1)");
  if (result.path.back() != WarpStep{n, m}) throw std::logic_error("path must end at (n, m)");
  double cost = 0.0;
  for (std::size_t t = 0; t < result.path.size(); ++t) {
    const auto [i, j] = result.path[t];
    if (i < 1 || i > n || j < 1 || j > m) throw std::logic_error("path index out of range");
    const std::size_t gap = i > j ? i - j : j - i;
    if (gap > w.effective(n, m)) throw std::logic_error("path leaves the band");
    if (t > 0) {
      const auto [pi, pj] = result.path[t - 1];
      const std::size_t di = i - pi;
      const std::size_t dj = j - pj;
      if (i < pi || j < pj || di > 1 || dj > 1 || (di == 0 && dj == 0)) {
        throw std::logic_error("path step is not one of (+1,+1), (+1,0), (0,+1)");
      }
    }
    const double d = x.samples[i - 1] - y.samples[j - 1];
    cost += d * d;
  }
  if (cost != result.cost) throw std::logic_error("path cost does not reproduce the DTW cost");
}

}  // namespace dtwclust::testing
