#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "time_series.hpp"
#include "warp_window.hpp"

namespace dtwclust {

namespace detail {

inline double square_diff(double a, double b) {
  const double d = a - b;
  return d * d;
}

inline void require_valid_pair(const TimeSeries& x, const TimeSeries& y, const WarpWindow& w) {
  validate(x);
  validate(y);
  if (!w.feasible_for(x.length(), y.length())) {
    throw BandInfeasibleError(x.length(), y.length(), w.half_width());
  }
}

}  // namespace detail

/// DTW cost between x and y: the sum of squared per-sample differences along
/// the cheapest admissible warping path, restricted to cells with
/// |i - j| <= half_width when the window is bounded. No square root is
/// applied; the cost is the raw cumulative value at the final cell.
///
/// Works on two rolling rows spanning the shorter series, so the working
/// memory is O(min(n, m)) regardless of lengths. Costs accumulate in plain
/// doubles without compensated summation; squared-difference sums at typical
/// dataset scales stay well inside double precision.
inline double dtw_distance(const TimeSeries& x, const TimeSeries& y, const WarpWindow& w) {
  detail::require_valid_pair(x, y, w);

  // The longer series runs along the outer loop so the rows span the shorter
  // one. |i - j| is symmetric, so the band is unaffected by the swap.
  const bool x_outer = x.length() >= y.length();
  const std::vector<double>& outer = x_outer ? x.samples : y.samples;
  const std::vector<double>& inner = x_outer ? y.samples : x.samples;
  const auto n = static_cast<std::int64_t>(outer.size());
  const auto m = static_cast<std::int64_t>(inner.size());
  const auto hw = static_cast<std::int64_t>(w.effective(outer.size(), inner.size()));

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Rows are 1-based over the inner series; index 0 is the virtual border.
  // prev[0] = 0 is the corner that cell (1, 1) closes diagonally.
  std::vector<double> prev(static_cast<std::size_t>(m) + 1, kInf);
  std::vector<double> cur(static_cast<std::size_t>(m) + 1, kInf);
  prev[0] = 0.0;

  for (std::int64_t i = 1; i <= n; ++i) {
    const double xi = outer[static_cast<std::size_t>(i - 1)];
    const std::int64_t j_begin = std::max<std::int64_t>(1, i - hw);
    const std::int64_t j_end = std::min<std::int64_t>(m, i + hw);
    // Reset the cells bordering the band; they may hold stale values from
    // two rows back.
    cur[static_cast<std::size_t>(j_begin - 1)] = kInf;
    for (std::int64_t j = j_begin; j <= j_end; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const double best_prev = std::min({prev[ju - 1], prev[ju], cur[ju - 1]});
      cur[ju] = detail::square_diff(xi, inner[ju - 1]) + best_prev;
    }
    if (j_end < m) cur[static_cast<std::size_t>(j_end + 1)] = kInf;
    std::swap(prev, cur);
  }
  return prev[static_cast<std::size_t>(m)];
}

/// One matched index pair of a warping path, 1-based into x and y.
struct WarpStep {
  std::size_t i = 0;
  std::size_t j = 0;
  bool operator==(const WarpStep&) const = default;
};

/// Monotone, continuous alignment from (1, 1) to (n, m).
using WarpPath = std::vector<WarpStep>;

struct PathResult {
  double cost = 0.0;
  WarpPath path;
};

/// Full-matrix reference implementation that also recovers the warping path.
/// The cost is identical to dtw_distance on the same inputs. During path
/// recovery, ties prefer the diagonal predecessor, then the vertical
/// (i-1, j) one, then the horizontal (i, j-1) one.
inline PathResult dtw_distance_with_path(const TimeSeries& x, const TimeSeries& y,
                                         const WarpWindow& w) {
  detail::require_valid_pair(x, y, w);

  const auto n = static_cast<std::int64_t>(x.length());
  const auto m = static_cast<std::int64_t>(y.length());
  const auto hw = static_cast<std::int64_t>(w.effective(x.length(), y.length()));

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t stride = static_cast<std::size_t>(m) + 1;
  std::vector<double> cells((static_cast<std::size_t>(n) + 1) * stride, kInf);
  const auto at = [&](std::int64_t i, std::int64_t j) -> double& {
    return cells[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(j)];
  };

  at(0, 0) = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) {
    const double xi = x.samples[static_cast<std::size_t>(i - 1)];
    const std::int64_t j_begin = std::max<std::int64_t>(1, i - hw);
    const std::int64_t j_end = std::min<std::int64_t>(m, i + hw);
    for (std::int64_t j = j_begin; j <= j_end; ++j) {
      const double best_prev = std::min({at(i - 1, j - 1), at(i - 1, j), at(i, j - 1)});
      at(i, j) = detail::square_diff(xi, y.samples[static_cast<std::size_t>(j - 1)]) + best_prev;
    }
  }

  WarpPath path;
  path.reserve(static_cast<std::size_t>(n + m));
  std::int64_t i = n;
  std::int64_t j = m;
  path.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
  while (i != 1 || j != 1) {
    const double diagonal = at(i - 1, j - 1);
    const double vertical = at(i - 1, j);
    const double horizontal = at(i, j - 1);
    const double best = std::min({diagonal, vertical, horizontal});
    if (diagonal == best) {
      --i;
      --j;
    } else if (vertical == best) {
      --i;
    } else {
      --j;
    }
    path.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
  }
  std::reverse(path.begin(), path.end());
  return {at(n, m), std::move(path)};
}

}  // namespace dtwclust
