#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "distance_matrix.hpp"
#include "dtw.hpp"
#include "errors.hpp"
#include "time_series.hpp"
#include "warp_window.hpp"

namespace dtwclust {

struct BuildStats {
  std::uint64_t evaluations = 0;
};

namespace detail {

/// Window actually applied to a pair: with auto_widen, an infeasible bounded
/// band is clamped up to the length gap |n - m| so the pair stays alignable.
inline WarpWindow pair_window(const WarpWindow& w, std::size_t n, std::size_t m,
                              bool auto_widen) {
  if (!auto_widen || w.feasible_for(n, m)) return w;
  return WarpWindow::banded(n > m ? n - m : m - n);
}

/// Start of row i in the condensed upper triangle.
inline std::size_t condensed_row_offset(std::size_t i, std::size_t p) noexcept {
  return i * p - i * (i + 1) / 2;
}

/// Decodes a condensed slot back to its (row, col) pair.
inline std::pair<std::size_t, std::size_t> condensed_pair(std::size_t slot, std::size_t p) {
  std::size_t lo = 0;
  std::size_t hi = p - 1;
  while (lo < hi) {  // last row r with offset(r) <= slot
    const std::size_t mid = (lo + hi + 1) / 2;
    if (condensed_row_offset(mid, p) <= slot) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return {lo, lo + 1 + (slot - condensed_row_offset(lo, p))};
}

}  // namespace detail

/// Builds the full symmetric pairwise DTW matrix with exactly p(p-1)/2
/// evaluations. Pairs are laid out in fixed row-major condensed order and
/// handed to up to `workers` threads in contiguous chunks; every thread
/// writes to its preassigned slots, so the output is element-wise identical
/// for any worker count.
inline DistanceMatrix build_matrix(const std::vector<TimeSeries>& dataset, const WarpWindow& w,
                                   unsigned workers, BuildStats* stats = nullptr,
                                   bool auto_widen = false) {
  if (dataset.empty()) throw EmptyDatasetError();
  if (workers == 0) throw InvalidArgumentsError("workers must be >= 1");
  validate_dataset(dataset);

  const std::size_t p = dataset.size();
  if (!auto_widen && !w.is_unlimited()) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) {
        if (!w.feasible_for(dataset[i].length(), dataset[j].length())) {
          throw BandInfeasibleError(
              i, j, BandInfeasibleError(dataset[i].length(), dataset[j].length(), w.half_width()));
        }
      }
    }
  }

  const std::size_t total = DistanceMatrix::condensed_size(p);
  std::vector<double> values(total, 0.0);
  std::atomic<std::uint64_t> evaluations{0};

  const auto compute_range = [&](std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    auto [i, j] = detail::condensed_pair(begin, p);
    std::uint64_t done = 0;
    for (std::size_t slot = begin; slot < end; ++slot) {
      const TimeSeries& a = dataset[i];
      const TimeSeries& b = dataset[j];
      values[slot] = dtw_distance(a, b, detail::pair_window(w, a.length(), b.length(), auto_widen));
      ++done;
      if (++j == p) {
        ++i;
        j = i + 1;
      }
    }
    evaluations += done;
  };

  const std::size_t thread_count = std::min<std::size_t>(workers, std::max<std::size_t>(total, 1));
  if (total == 0 || thread_count <= 1) {
    compute_range(0, total);
  } else {
    const std::size_t chunk = (total + thread_count - 1) / thread_count;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(thread_count);
    pool.reserve(thread_count);
    for (std::size_t t = 0; t < thread_count; ++t) {
      pool.emplace_back([&, t] {
        try {
          compute_range(t * chunk, std::min(total, (t + 1) * chunk));
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
    for (std::thread& worker : pool) worker.join();
    for (const std::exception_ptr& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  if (stats) stats->evaluations = evaluations.load();
  return DistanceMatrix::from_condensed(p, std::move(values));
}

/// Memoizing on-demand distance source for iterative clustering: a pair is
/// computed at most once and the source never has to materialize the full
/// matrix. Thread-safe; concurrent first requests for the same pair may both
/// compute, but the first stored value wins and is what everyone observes.
class LazyDistanceSource {
 public:
  LazyDistanceSource(const std::vector<TimeSeries>& dataset, const WarpWindow& w,
                     bool auto_widen = false)
      : dataset_(&dataset), window_(w), auto_widen_(auto_widen) {
    if (dataset.empty()) throw EmptyDatasetError();
    validate_dataset(dataset);
  }

  std::size_t size() const noexcept { return dataset_->size(); }

  double distance(std::size_t i, std::size_t j) {
    const std::size_t p = size();
    if (i >= p) throw IndexOutOfRangeError(i, p);
    if (j >= p) throw IndexOutOfRangeError(j, p);
    if (i == j) return 0.0;
    const std::uint64_t key = pair_key(i, j);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      const auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    double value = 0.0;
    const TimeSeries& a = (*dataset_)[i];
    const TimeSeries& b = (*dataset_)[j];
    try {
      value = dtw_distance(a, b, detail::pair_window(window_, a.length(), b.length(), auto_widen_));
    } catch (const BandInfeasibleError& e) {
      throw BandInfeasibleError(std::min(i, j), std::max(i, j), e);
    }
    std::lock_guard<std::mutex> lock(mutex_);
    const auto [it, inserted] = memo_.try_emplace(key, value);
    if (inserted) ++computed_;
    return it->second;
  }

  /// Number of distinct pairs computed so far; at most p(p-1)/2.
  std::uint64_t computed_pairs() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return computed_;
  }

 private:
  std::uint64_t pair_key(std::size_t i, std::size_t j) const noexcept {
    const std::size_t lo = std::min(i, j);
    const std::size_t hi = std::max(i, j);
    return static_cast<std::uint64_t>(lo) * size() + hi;
  }

  const std::vector<TimeSeries>* dataset_;
  WarpWindow window_;
  bool auto_widen_;
  mutable std::mutex mutex_;
  std::unordered_map<std::uint64_t, double> memo_;
  std::uint64_t computed_ = 0;
};

}  // namespace dtwclust
