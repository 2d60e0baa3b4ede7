#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cluster_result.hpp"
#include "distance_matrix.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "kmedoids.hpp"

namespace dtwclust {

/// Cluster-quality scores: per-series silhouettes in [-1, 1] and the
/// cost-vs-k elbow curve.
struct ScoreReport {
  std::vector<double> silhouette;
  double mean_silhouette = 0.0;
  std::vector<std::pair<std::size_t, double>> elbow;  // (k, total_cost), ascending k
};

/// Silhouette of each series under the given clustering: s = (b - a) / max(a, b)
/// with a the mean distance to the other members of the own cluster and b the
/// smallest mean distance to another cluster. Singleton clusters score 0, as
/// does the degenerate case a = b = 0. Needs at least two clusters.
inline ScoreReport silhouette_scores(const DistanceMatrix& distances,
                                     const ClusterResult& result) {
  const std::size_t p = distances.size();
  if (result.assignment.size() != p) {
    throw InvalidArgumentsError("clustering covers " + std::to_string(result.assignment.size()) +
                                " series, matrix has " + std::to_string(p));
  }
  if (result.medoids.size() < 2) throw SingleClusterUndefinedError();

  const std::size_t k = result.medoids.size();
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t j = 0; j < p; ++j) {
    const auto slot =
        std::lower_bound(result.medoids.begin(), result.medoids.end(), result.assignment[j]);
    if (slot == result.medoids.end() || *slot != result.assignment[j]) {
      throw InvalidArgumentsError("series " + std::to_string(j) +
                                  " is assigned to a non-medoid");
    }
    members[static_cast<std::size_t>(slot - result.medoids.begin())].push_back(j);
  }

  ScoreReport report;
  report.silhouette.resize(p, 0.0);
  double sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t t : members[c]) {
      if (members[c].size() == 1) continue;  // singleton convention: s = 0
      double own = 0.0;
      for (std::size_t m : members[c]) {
        if (m != t) own += distances.distance(t, m);
      }
      const double a = own / static_cast<double>(members[c].size() - 1);

      double b = std::numeric_limits<double>::infinity();
      for (std::size_t other = 0; other < k; ++other) {
        if (other == c || members[other].empty()) continue;
        double across = 0.0;
        for (std::size_t m : members[other]) across += distances.distance(t, m);
        b = std::min(b, across / static_cast<double>(members[other].size()));
      }

      const double denom = std::max(a, b);
      const double s = denom > 0.0 ? (b - a) / denom : 0.0;
      report.silhouette[t] = s;
      sum += s;
    }
  }
  report.mean_silhouette = sum / static_cast<double>(p);
  return report;
}

enum class ClusterMethod { Exact, KMedoids };

inline const char* to_string(ClusterMethod m) noexcept {
  return m == ClusterMethod::Exact ? "exact" : "kmedoids";
}

/// Runs the chosen clusterer for every requested k and returns the
/// (k, total_cost) curve in ascending k. With the exact method the costs are
/// globally optimal per k, hence non-increasing. Errors from an individual
/// run are rethrown annotated with the failing k.
inline std::vector<std::pair<std::size_t, double>> elbow_curve(
    const DistanceMatrix& distances, std::vector<std::size_t> ks, ClusterMethod method,
    const KMedoidsConfig& config = {}, const ExactOptions& exact_options = {}) {
  if (ks.empty()) throw InvalidArgumentsError("elbow curve needs at least one k");
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  std::vector<std::pair<std::size_t, double>> curve;
  curve.reserve(ks.size());
  for (std::size_t k : ks) {
    try {
      double cost = 0.0;
      if (method == ClusterMethod::Exact) {
        cost = solve_exact(distances, k, exact_options).total_cost;
      } else {
        KMedoidsConfig per_k = config;
        per_k.k = k;
        cost = kmedoids(distances, per_k).total_cost;
      }
      curve.emplace_back(k, cost);
    } catch (const Error& e) {
      throw Error(e.code(), "k=" + std::to_string(k) + ": " + e.what());
    }
  }
  return curve;
}

}  // namespace dtwclust
