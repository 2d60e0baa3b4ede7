#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "cluster_result.hpp"
#include "distance_matrix.hpp"
#include "errors.hpp"
#include "kmedoids.hpp"

namespace dtwclust {

struct ExactOptions {
  /// Search nodes allowed before the solver gives up on the optimality proof
  /// and returns the incumbent with a LocalHeuristic certificate.
  std::uint64_t node_budget = 50'000'000;
};

/// p x p binary matrix: entry (i, j) = 1 iff series j belongs to the cluster
/// whose medoid is series i. Medoids appear as non-zero diagonal entries.
class AssignmentMatrix {
 public:
  explicit AssignmentMatrix(std::size_t p) : p_(p), bits_(p * p, 0) {}

  static AssignmentMatrix from_result(const ClusterResult& result) {
    AssignmentMatrix a(result.assignment.size());
    for (std::size_t j = 0; j < result.assignment.size(); ++j) {
      a.set(result.assignment[j], j, 1);
    }
    return a;
  }

  std::size_t size() const noexcept { return p_; }
  std::uint8_t at(std::size_t i, std::size_t j) const { return bits_[i * p_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint8_t value) { bits_[i * p_ + j] = value; }

 private:
  std::size_t p_;
  std::vector<std::uint8_t> bits_;
};

/// The three feasibility constraints on an assignment matrix.
enum class AssignmentConstraint {
  MedoidCount,          // exactly k non-zero diagonal entries
  UniqueAssignment,     // every column sums to exactly one
  MemberRequiresMedoid  // a row may only have entries where its diagonal is set
};

inline const char* to_string(AssignmentConstraint c) noexcept {
  switch (c) {
    case AssignmentConstraint::MedoidCount: return "medoid-count";
    case AssignmentConstraint::UniqueAssignment: return "unique-assignment";
    default: return "member-requires-medoid";
  }
}

struct ConstraintViolation {
  AssignmentConstraint constraint;
  std::string detail;
};

struct ValidationReport {
  bool pass = true;
  std::vector<ConstraintViolation> violations;
};

/// Checks the assignment-matrix constraints and reports every violation.
inline ValidationReport validate_assignment(const AssignmentMatrix& a, std::size_t k) {
  ValidationReport report;
  const std::size_t p = a.size();

  std::size_t diagonal_count = 0;
  for (std::size_t i = 0; i < p; ++i) diagonal_count += a.at(i, i);
  if (diagonal_count != k) {
    report.violations.push_back({AssignmentConstraint::MedoidCount,
                                 "diagonal sum is " + std::to_string(diagonal_count) +
                                     ", expected k=" + std::to_string(k)});
  }

  for (std::size_t j = 0; j < p; ++j) {
    std::size_t column_sum = 0;
    for (std::size_t i = 0; i < p; ++i) column_sum += a.at(i, j);
    if (column_sum != 1) {
      report.violations.push_back({AssignmentConstraint::UniqueAssignment,
                                   "column " + std::to_string(j) + " sums to " +
                                       std::to_string(column_sum) + ", expected 1"});
    }
  }

  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (a.at(i, j) > a.at(i, i)) {
        report.violations.push_back({AssignmentConstraint::MemberRequiresMedoid,
                                     "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                         ") is set but the row has no medoid"});
      }
    }
  }

  report.pass = report.violations.empty();
  return report;
}

namespace detail {

inline bool lexicographically_less(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Depth-first branch-and-bound over medoid inclusion/exclusion.
///
/// Every node computes, in one pass over the undecided candidates:
///   - bound 1: each series served by its cheapest chosen-or-undecided
///     candidate (ignores how many medoids may still open);
///   - bound 2: the chosen-only cost minus the `need` largest
///     single-candidate savings. Savings of a candidate set are subadditive,
///     so this is a valid lower bound that does respect cardinality;
///   - the branching candidate: the undecided candidate with the largest
///     saving, ties to the lowest index. Including the strongest candidate
///     first reaches good leaves early and makes the exclusion branch prune
///     hard.
/// Pruning happens only on a strict bound excess, which keeps every
/// equal-cost optimum reachable so the lexicographic tie-break stays exact.
class MedoidSearch {
 public:
  MedoidSearch(const DistanceMatrix& distances, std::size_t k, std::uint64_t node_budget)
      : distances_(distances), p_(distances.size()), k_(k), node_budget_(node_budget) {}

  void run(double incumbent_cost, std::vector<std::size_t> incumbent_set) {
    incumbent_cost_ = incumbent_cost;
    incumbent_set_ = std::move(incumbent_set);

    row_sum_.assign(p_, 0.0);
    for (std::size_t i = 0; i < p_; ++i) {
      for (std::size_t j = 0; j < p_; ++j) row_sum_[i] += distances_.distance(i, j);
    }

    decided_.assign(p_, 0);
    best_chosen_.assign(p_, std::numeric_limits<double>::infinity());
    undecided_min_.assign(p_, 0.0);
    top_savings_.reserve(k_);
    chosen_.clear();
    descend(k_, p_);
  }

  double incumbent_cost() const noexcept { return incumbent_cost_; }
  const std::vector<std::size_t>& incumbent_set() const noexcept { return incumbent_set_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  bool truncated() const noexcept { return truncated_; }

 private:
  void descend(std::size_t need, std::size_t undecided_count) {
    if (truncated_) return;
    if (++nodes_ > node_budget_) {
      truncated_ = true;
      return;
    }

    if (need == 0) {
      double cost = 0.0;
      for (std::size_t j = 0; j < p_; ++j) cost += best_chosen_[j];
      consider(cost);
      return;
    }
    if (undecided_count < need) return;

    // One pass over the undecided candidates: per-series undecided minimum
    // (bound 1), per-candidate saving (bound 2 + branching choice).
    std::fill(undecided_min_.begin(), undecided_min_.end(),
              std::numeric_limits<double>::infinity());
    top_savings_.clear();
    std::size_t branch = p_;
    double branch_saving = -1.0;
    const bool have_chosen = !chosen_.empty();
    for (std::size_t c = 0; c < p_; ++c) {
      if (decided_[c]) continue;
      double saving = 0.0;
      for (std::size_t j = 0; j < p_; ++j) {
        const double d = distances_.distance(c, j);
        if (d < undecided_min_[j]) undecided_min_[j] = d;
        const double gain = best_chosen_[j] - d;
        if (gain > 0.0 && gain < std::numeric_limits<double>::infinity()) saving += gain;
      }
      // min-heap of the `need` largest savings
      if (top_savings_.size() < need) {
        top_savings_.push_back(saving);
        std::push_heap(top_savings_.begin(), top_savings_.end(), std::greater<double>());
      } else if (saving > top_savings_.front()) {
        std::pop_heap(top_savings_.begin(), top_savings_.end(), std::greater<double>());
        top_savings_.back() = saving;
        std::push_heap(top_savings_.begin(), top_savings_.end(), std::greater<double>());
      }
      // branch on the biggest saving; before anything is chosen, savings are
      // all equal, so fall back to the smallest row sum (strongest medoid)
      const double preference = have_chosen ? saving : -row_sum_[c];
      if (branch == p_ || preference > branch_saving) {
        branch_saving = preference;
        branch = c;
      }
    }

    double relaxed = 0.0;
    for (std::size_t j = 0; j < p_; ++j) {
      relaxed += std::min(best_chosen_[j], undecided_min_[j]);
    }
    if (relaxed > incumbent_cost_) return;

    if (have_chosen) {
      double chosen_only = 0.0;
      for (std::size_t j = 0; j < p_; ++j) chosen_only += best_chosen_[j];
      double best_savings = 0.0;
      for (double s : top_savings_) best_savings += s;
      // Unlike bound 1, this expression is not evaluated in the same
      // summation order as a leaf cost, so rounding could push it a few ulp
      // past a true completion cost. The slack keeps the bound safe.
      const double slack = 1e-9 * (chosen_only + best_savings);
      if (chosen_only - best_savings - slack > incumbent_cost_) return;
    }

    // include the branch candidate
    std::vector<double> saved(best_chosen_);
    for (std::size_t j = 0; j < p_; ++j) {
      best_chosen_[j] = std::min(best_chosen_[j], distances_.distance(branch, j));
    }
    chosen_.push_back(branch);
    decided_[branch] = 1;
    descend(need - 1, undecided_count - 1);
    chosen_.pop_back();
    best_chosen_ = std::move(saved);

    // exclude it
    descend(need, undecided_count - 1);
    decided_[branch] = 0;
  }

  void consider(double cost) {
    if (cost > incumbent_cost_) return;
    std::vector<std::size_t> sorted(chosen_);
    std::sort(sorted.begin(), sorted.end());
    if (cost < incumbent_cost_ ||
        (cost == incumbent_cost_ && lexicographically_less(sorted, incumbent_set_))) {
      incumbent_cost_ = cost;
      incumbent_set_ = std::move(sorted);
    }
  }

  const DistanceMatrix& distances_;
  std::size_t p_;
  std::size_t k_;
  std::uint64_t node_budget_;
  std::vector<double> row_sum_;
  std::vector<double> best_chosen_;
  std::vector<double> undecided_min_;
  std::vector<double> top_savings_;
  std::vector<std::size_t> chosen_;
  std::vector<char> decided_;
  double incumbent_cost_ = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> incumbent_set_;
  std::uint64_t nodes_ = 0;
  bool truncated_ = false;
};

}  // namespace detail

/// Chooses the k medoids minimizing the summed distance of every series to
/// its nearest medoid, exactly. A depth-first branch-and-bound over medoid
/// inclusion/exclusion branches on the undecided candidate with the largest
/// saving, seeded with one k-medoids incumbent; exhausting the tree certifies
/// global optimality. Equal-cost medoid sets resolve to the lexicographically
/// smallest, equidistant assignments to the lowest medoid index.
inline ClusterResult solve_exact(const DistanceMatrix& distances, std::size_t k,
                                 const ExactOptions& options = {}) {
  const std::size_t p = distances.size();
  if (k < 1 || k > p) throw KOutOfRangeError(k, p);
  for (double v : distances.condensed()) {
    if (!(std::isfinite(v) && v >= 0.0)) {
      throw DistanceMatrixInvalidError("entries must be finite and non-negative");
    }
  }

  KMedoidsConfig warm_start;
  warm_start.k = k;
  warm_start.restarts = 3;
  warm_start.max_iterations = 100;
  warm_start.seed = 0x5EED5EEDULL;
  const ClusterResult heuristic = kmedoids(distances, warm_start);

  detail::MedoidSearch search(distances, k, options.node_budget);
  search.run(heuristic.total_cost, heuristic.medoids);

  ClusterResult result;
  result.medoids = search.incumbent_set();
  result.assignment = assign_to_medoids(distances, result.medoids);
  result.total_cost = assignment_cost(distances, result.assignment);
  result.certificate =
      search.truncated() ? Certificate::LocalHeuristic : Certificate::GlobalOptimal;
  result.nodes_explored = search.nodes();
  return result;
}

}  // namespace dtwclust
