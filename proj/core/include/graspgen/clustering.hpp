#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "graspgen/errors.hpp"
#include "graspgen/synthesis.hpp"

namespace graspgen {

/// Output of one k-medoids run. Medoids are item indices into the input
/// (actual elements, never synthetic means).
struct ClusterResult {
  std::vector<std::size_t> medoid_indices;  // strictly ascending
  std::vector<std::size_t> assignment;      // item -> item index of its medoid
  double total_cost = 0.0;                  // sum of item-to-assigned-medoid distances
};

struct ClusteringConfig {
  std::size_t k_translational = 10;
  std::size_t k_rotational = 3;
  std::size_t max_swap_iterations = 200;
};

/// Diagnostics recorded during the SWAP phase, for tests.
struct PamTrace {
  std::vector<double> swap_costs;  // total cost after each strict-improvement swap
  std::size_t improving_swaps = 0;
  std::size_t plateau_swaps = 0;
};

namespace detail {

// Nearest and second-nearest current medoid per item. Ties go to the lower
// medoid index (medoids are iterated in ascending order).
struct NearestInfo {
  std::vector<std::size_t> nearest;
  std::vector<double> d_nearest;
  std::vector<double> d_second;
};

template <class DistanceFn>
void recompute_nearest(std::size_t n, DistanceFn& distance,
                       const std::vector<std::size_t>& medoids, NearestInfo& info) {
  info.nearest.assign(n, n);
  info.d_nearest.assign(n, std::numeric_limits<double>::infinity());
  info.d_second.assign(n, std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m : medoids) {
      const double d = distance(j, m);
      if (d < info.d_nearest[j]) {
        info.d_second[j] = info.d_nearest[j];
        info.d_nearest[j] = d;
        info.nearest[j] = m;
      } else if (d < info.d_second[j]) {
        info.d_second[j] = d;
      }
    }
  }
}

}  // namespace detail

/// Partitioning Around Medoids over an abstract pairwise distance.
///
/// Requires a symmetric, non-negative distance with d(i, i) = 0. When
/// k >= n_items every item becomes its own medoid at cost 0. Otherwise:
///
/// BUILD greedily selects k medoids: first the item minimizing total
/// distance to all items, then repeatedly the item with the largest cost
/// reduction (ties to the lowest index).
///
/// SWAP repeatedly applies the single (medoid, non-medoid) exchange with the
/// largest strict cost decrease (ties to the lexicographically smallest
/// (medoid, candidate) pair) until no exchange decreases the cost or
/// max_iter exchanges were applied. On a cost plateau, a cost-neutral
/// exchange that lowers the medoid index set lexicographically is applied
/// instead, so equal-cost optima resolve to a canonical deterministic
/// result; the strict-descent search then resumes.
///
/// Deterministic: identical inputs give identical outputs.
template <class DistanceFn>
ClusterResult pam(std::size_t n_items, DistanceFn&& distance, std::size_t k,
                  std::size_t max_iter = 200, PamTrace* trace = nullptr) {
  if (k == 0) throw InvalidKError("pam: k must be >= 1");

  ClusterResult result;
  if (n_items == 0) return result;

  if (k >= n_items) {
    result.medoid_indices.resize(n_items);
    result.assignment.resize(n_items);
    for (std::size_t i = 0; i < n_items; ++i) {
      result.medoid_indices[i] = i;
      result.assignment[i] = i;
    }
    result.total_cost = 0.0;
    return result;
  }

  const std::size_t n = n_items;
  std::vector<char> is_medoid(n, 0);
  std::vector<std::size_t> medoids;  // kept sorted ascending
  medoids.reserve(k);

  // ---- BUILD ----
  {
    std::size_t first = 0;
    double best_total = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) total += distance(i, j);
      if (total < best_total) {
        best_total = total;
        first = i;
      }
    }
    medoids.push_back(first);
    is_medoid[first] = 1;

    std::vector<double> d_nearest(n);
    for (std::size_t j = 0; j < n; ++j) d_nearest[j] = distance(j, first);

    while (medoids.size() < k) {
      std::size_t best_item = n;
      double best_gain = -1.0;
      for (std::size_t c = 0; c < n; ++c) {
        if (is_medoid[c]) continue;
        double gain = 0.0;
        // distance is symmetric; fixing the first argument keeps
        // matrix-backed oracles on one contiguous row.
        for (std::size_t j = 0; j < n; ++j) {
          const double d = distance(c, j);
          if (d < d_nearest[j]) gain += d_nearest[j] - d;
        }
        if (gain > best_gain) {
          best_gain = gain;
          best_item = c;
        }
      }
      medoids.insert(std::lower_bound(medoids.begin(), medoids.end(), best_item), best_item);
      is_medoid[best_item] = 1;
      for (std::size_t j = 0; j < n; ++j)
        d_nearest[j] = std::min(d_nearest[j], distance(best_item, j));
    }
  }

  // ---- SWAP ----
  detail::NearestInfo info;
  detail::recompute_nearest(n, distance, medoids, info);

  const auto current_cost = [&] {
    double c = 0.0;
    for (std::size_t j = 0; j < n; ++j) c += info.d_nearest[j];
    return c;
  };

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    double best_delta = 0.0;
    std::size_t best_m = n, best_h = n;

    bool have_plateau = false;
    std::size_t plateau_m = n, plateau_h = n;
    std::vector<std::size_t> plateau_set;

    for (std::size_t m : medoids) {
      for (std::size_t h = 0; h < n; ++h) {
        if (is_medoid[h]) continue;
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double djh = distance(h, j);
          const double before = info.d_nearest[j];
          const double after =
              info.nearest[j] == m ? std::min(info.d_second[j], djh) : std::min(before, djh);
          delta += after - before;
        }
        if (delta < best_delta) {
          best_delta = delta;
          best_m = m;
          best_h = h;
        } else if (delta == 0.0 && best_m == n && h < m) {
          // Cost-neutral exchange lowering the medoid set; candidate for
          // canonicalization if no strict improvement exists.
          std::vector<std::size_t> candidate_set = medoids;
          candidate_set.erase(std::find(candidate_set.begin(), candidate_set.end(), m));
          candidate_set.insert(
              std::lower_bound(candidate_set.begin(), candidate_set.end(), h), h);
          if (!have_plateau || candidate_set < plateau_set) {
            have_plateau = true;
            plateau_set = std::move(candidate_set);
            plateau_m = m;
            plateau_h = h;
          }
        }
      }
    }

    std::size_t apply_m = n, apply_h = n;
    if (best_m != n) {
      apply_m = best_m;
      apply_h = best_h;
      if (trace) ++trace->improving_swaps;
    } else if (have_plateau) {
      apply_m = plateau_m;
      apply_h = plateau_h;
      if (trace) ++trace->plateau_swaps;
    } else {
      break;  // local optimum with canonical medoid set
    }

    medoids.erase(std::find(medoids.begin(), medoids.end(), apply_m));
    medoids.insert(std::lower_bound(medoids.begin(), medoids.end(), apply_h), apply_h);
    is_medoid[apply_m] = 0;
    is_medoid[apply_h] = 1;
    detail::recompute_nearest(n, distance, medoids, info);
    if (trace && best_m != n) trace->swap_costs.push_back(current_cost());
  }

  result.medoid_indices = medoids;
  result.assignment.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    result.assignment[j] = is_medoid[j] ? j : info.nearest[j];
  result.total_cost = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    result.total_cost += distance(j, result.assignment[j]);
  return result;
}

/// Per-stage diagnostics from the two-stage reduction.
struct GraspClusteringDetail {
  ClusterResult translational;
  /// Candidate indices per translational cluster, in ascending order of the
  /// cluster's medoid index; members ascending within each cluster.
  std::vector<std::vector<std::size_t>> cluster_members;
  /// Stage-2 result per translational cluster; indices are local to the
  /// corresponding cluster_members entry.
  std::vector<ClusterResult> rotational;
  /// Global candidate indices of the final medoids, ascending.
  std::vector<std::size_t> selected;
};

/// Two-stage reduction of a candidate set while maximizing diversity:
/// stage 1 clusters candidate midpoints with Euclidean distance
/// (k = min(k_translational, n)); stage 2 clusters each translational
/// cluster by grasp axis with the sign-invariant axial distance
/// (k = min(k_rotational, cluster size)). The returned grasps are the
/// stage-2 medoids, bit-identical elements of the input, sorted by (i, j).
/// Throws EmptyInputError on an empty candidate list.
std::vector<GraspCandidate> cluster_grasps(const std::vector<GraspCandidate>& candidates,
                                           const ClusteringConfig& config,
                                           GraspClusteringDetail* detail = nullptr);

}  // namespace graspgen
