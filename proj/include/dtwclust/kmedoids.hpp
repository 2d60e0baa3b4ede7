#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "cluster_result.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace dtwclust {

struct KMedoidsConfig {
  std::size_t k = 1;
  std::size_t restarts = 10;
  std::size_t max_iterations = 100;
  std::uint64_t seed = 0;
};

/// Called after each assignment sweep with the cost at that point; within one
/// restart the reported costs are non-increasing.
using IterationObserver =
    std::function<void(std::size_t restart, std::size_t iteration, double cost)>;

namespace detail {

/// Greedy spread seeding: the first medoid is uniform at random, each next
/// one is drawn with probability proportional to its distance to the nearest
/// already-chosen medoid. When every remaining weight is zero (duplicates),
/// the lowest-index unchosen series is taken.
template <DistanceSource S>
std::vector<std::size_t> spread_seeds(S& source, std::size_t k, SplitMix64& rng) {
  const std::size_t p = source.size();
  std::vector<std::size_t> medoids;
  medoids.reserve(k);
  std::vector<char> chosen(p, 0);
  std::vector<double> nearest(p, std::numeric_limits<double>::infinity());

  std::size_t current = rng.next_below(p);
  while (medoids.size() < k) {
    medoids.push_back(current);
    chosen[current] = 1;
    if (medoids.size() == k) break;

    double total_weight = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (chosen[j]) continue;
      nearest[j] = std::min(nearest[j], source.distance(j, current));
      total_weight += nearest[j];
    }

    std::size_t next = p;
    if (total_weight > 0.0) {
      const double target = rng.next_double() * total_weight;
      double accumulated = 0.0;
      for (std::size_t j = 0; j < p; ++j) {
        if (chosen[j]) continue;
        accumulated += nearest[j];
        if (accumulated > target) {
          next = j;
          break;
        }
      }
    }
    if (next == p) {  // all-zero weights, or the running sum never crossed
      for (std::size_t j = 0; j < p; ++j) {
        if (!chosen[j]) {
          next = j;
          break;
        }
      }
    }
    current = next;
  }
  std::sort(medoids.begin(), medoids.end());
  return medoids;
}

/// One update sweep: within each cluster the medoid moves to the member with
/// the smallest summed distance to all members, ties to the lowest index.
/// A medoid left without members is reseeded at the worst-served series.
template <DistanceSource S>
std::vector<std::size_t> update_medoids(S& source, const std::vector<std::size_t>& medoids,
                                        const std::vector<std::size_t>& assignment) {
  const std::size_t p = source.size();
  std::vector<std::vector<std::size_t>> members(medoids.size());
  for (std::size_t j = 0; j < p; ++j) {
    const auto slot = std::lower_bound(medoids.begin(), medoids.end(), assignment[j]);
    members[static_cast<std::size_t>(slot - medoids.begin())].push_back(j);
  }

  std::vector<std::size_t> updated(medoids.size());
  for (std::size_t c = 0; c < medoids.size(); ++c) {
    const std::vector<std::size_t>& cluster = members[c];
    if (cluster.empty()) {
      std::size_t worst = medoids[c];
      double worst_distance = -1.0;
      for (std::size_t j = 0; j < p; ++j) {
        if (std::find(medoids.begin(), medoids.end(), j) != medoids.end()) continue;
        const double d = source.distance(j, assignment[j]);
        if (d > worst_distance) {
          worst_distance = d;
          worst = j;
        }
      }
      updated[c] = worst;
      continue;
    }
    std::size_t best = cluster.front();
    double best_sum = std::numeric_limits<double>::infinity();
    for (std::size_t candidate : cluster) {
      double sum = 0.0;
      for (std::size_t member : cluster) sum += source.distance(candidate, member);
      if (sum < best_sum) {
        best_sum = sum;
        best = candidate;
      }
    }
    updated[c] = best;
  }
  std::sort(updated.begin(), updated.end());
  updated.erase(std::unique(updated.begin(), updated.end()), updated.end());
  // Collapsed medoids (possible only with duplicate series) are refilled from
  // the lowest-index unused series.
  if (updated.size() < medoids.size()) {
    std::vector<char> used(p, 0);
    for (std::size_t m : updated) used[m] = 1;
    for (std::size_t j = 0; j < p && updated.size() < medoids.size(); ++j) {
      if (!used[j]) {
        updated.push_back(j);
        used[j] = 1;
      }
    }
    std::sort(updated.begin(), updated.end());
  }
  return updated;
}

}  // namespace detail

/// Iterative k-medoids: alternates nearest-medoid assignment with the
/// within-cluster medoid update until the medoid set is stable or the
/// iteration cap is hit, and keeps the best of `restarts` independently
/// seeded runs (ties to the earliest restart). Deterministic given the seed;
/// no optimality certificate.
template <DistanceSource S>
ClusterResult kmedoids(S& source, const KMedoidsConfig& config,
                       const IterationObserver& observer = {}) {
  const std::size_t p = source.size();
  if (config.k < 1 || config.k > p) throw KOutOfRangeError(config.k, p);
  if (config.restarts < 1) throw InvalidArgumentsError("restarts must be >= 1");
  if (config.max_iterations < 1) throw InvalidArgumentsError("max_iterations must be >= 1");

  ClusterResult best;
  bool have_best = false;
  for (std::size_t restart = 0; restart < config.restarts; ++restart) {
    SplitMix64 rng = restart_stream(config.seed, restart);
    std::vector<std::size_t> medoids = detail::spread_seeds(source, config.k, rng);

    std::vector<std::size_t> assignment;
    double cost = 0.0;
    bool converged = false;
    for (std::size_t iteration = 0; iteration < config.max_iterations && !converged;
         ++iteration) {
      assignment = assign_to_medoids(source, medoids);
      cost = assignment_cost(source, assignment);
      if (observer) observer(restart, iteration, cost);
      std::vector<std::size_t> updated = detail::update_medoids(source, medoids, assignment);
      if (updated == medoids) {
        converged = true;
      } else {
        medoids = std::move(updated);
      }
    }
    if (!converged) {  // iteration cap hit right after an update
      assignment = assign_to_medoids(source, medoids);
      cost = assignment_cost(source, assignment);
    }

    if (!have_best || cost < best.total_cost) {
      best = ClusterResult{std::move(medoids), std::move(assignment), cost,
                           Certificate::LocalHeuristic, 0};
      have_best = true;
    }
  }
  return best;
}

}  // namespace dtwclust
