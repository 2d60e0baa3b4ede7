#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dtwclust {

/// Anything that can answer pairwise distances for p series: the full
/// DistanceMatrix or the memoizing LazyDistanceSource.
template <typename S>
concept DistanceSource = requires(S& source, std::size_t i) {
  { source.size() } -> std::convertible_to<std::size_t>;
  { source.distance(i, i) } -> std::convertible_to<double>;
};

enum class Certificate { GlobalOptimal, LocalHeuristic };

inline const char* to_string(Certificate c) noexcept {
  return c == Certificate::GlobalOptimal ? "global_optimal" : "local_heuristic";
}

/// Outcome of a clustering run: the k medoid indices (ascending), the medoid
/// each series belongs to, and the summed assignment cost.
struct ClusterResult {
  std::vector<std::size_t> medoids;
  std::vector<std::size_t> assignment;  // assignment[j] = medoid index of series j
  double total_cost = 0.0;
  Certificate certificate = Certificate::LocalHeuristic;
  std::uint64_t nodes_explored = 0;  // exact solver only

  bool operator==(const ClusterResult&) const = default;
};

/// Nearest-medoid assignment. A medoid always belongs to its own cluster;
/// every other series goes to the closest medoid, ties to the lowest medoid
/// index. `medoids` must be sorted ascending.
template <DistanceSource S>
std::vector<std::size_t> assign_to_medoids(S& source, const std::vector<std::size_t>& medoids) {
  const std::size_t p = source.size();
  std::vector<std::size_t> assignment(p);
  for (std::size_t j = 0; j < p; ++j) {
    if (std::binary_search(medoids.begin(), medoids.end(), j)) {
      assignment[j] = j;
      continue;
    }
    std::size_t best = medoids.front();
    double best_distance = source.distance(j, best);
    for (std::size_t t = 1; t < medoids.size(); ++t) {
      const double d = source.distance(j, medoids[t]);
      if (d < best_distance) {
        best_distance = d;
        best = medoids[t];
      }
    }
    assignment[j] = best;
  }
  return assignment;
}

/// Total cost of an assignment, accumulated in ascending series order so
/// equal clusterings always produce bit-identical sums.
template <DistanceSource S>
double assignment_cost(S& source, const std::vector<std::size_t>& assignment) {
  double total = 0.0;
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    total += source.distance(j, assignment[j]);
  }
  return total;
}

}  // namespace dtwclust
