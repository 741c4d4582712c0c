#include "graspgen/clustering.hpp"

#include <functional>

namespace graspgen {

namespace {

// Above this item count the O(n^2) distance matrix (8-byte entries) is no
// longer precomputed and distances are evaluated on demand.
constexpr std::size_t kDistanceMatrixCap = 20000;

// Runs pam() over `n` items with the given element distance, backed by a
// precomputed matrix when it fits.
template <class ElementDistance>
ClusterResult run_pam_stage(std::size_t n, ElementDistance&& element_distance, std::size_t k,
                            std::size_t max_iter) {
  if (n <= kDistanceMatrixCap) {
    std::vector<double> matrix(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const double d = element_distance(a, b);
        matrix[a * n + b] = d;
        matrix[b * n + a] = d;
      }
    return pam(
        n, [&matrix, n](std::size_t a, std::size_t b) { return matrix[a * n + b]; }, k,
        max_iter);
  }
  // On-demand path: pin d(i, i) to exactly zero (acos-based distances only
  // resolve the self distance to ~1e-8).
  return pam(
      n,
      [&element_distance](std::size_t a, std::size_t b) {
        return a == b ? 0.0 : element_distance(a, b);
      },
      k, max_iter);
}

}  // namespace

std::vector<GraspCandidate> cluster_grasps(const std::vector<GraspCandidate>& candidates,
                                           const ClusteringConfig& config,
                                           GraspClusteringDetail* detail) {
  if (candidates.empty()) throw EmptyInputError("cluster_grasps: no candidates");
  if (config.k_translational < 1 || config.k_rotational < 1)
    throw InvalidKError("cluster_grasps: cluster counts must be >= 1");
  if (config.max_swap_iterations < 1)
    throw InvalidArgumentError("cluster_grasps: max_swap_iterations must be >= 1");

  const std::size_t n = candidates.size();

  // Stage 1: midpoint translation, Euclidean distance.
  const auto midpoint_distance = [&candidates](std::size_t a, std::size_t b) {
    return (candidates[a].pair.midpoint - candidates[b].pair.midpoint).norm();
  };
  ClusterResult translational =
      run_pam_stage(n, midpoint_distance, std::min(config.k_translational, n),
                    config.max_swap_iterations);

  // Group members per translational medoid, ascending in both dimensions.
  std::vector<std::vector<std::size_t>> members(translational.medoid_indices.size());
  for (std::size_t item = 0; item < n; ++item) {
    const std::size_t medoid = translational.assignment[item];
    const auto slot = std::lower_bound(translational.medoid_indices.begin(),
                                       translational.medoid_indices.end(), medoid) -
                      translational.medoid_indices.begin();
    members[static_cast<std::size_t>(slot)].push_back(item);
  }

  // Stage 2: per cluster, grasp axis direction with sign-invariant distance.
  std::vector<ClusterResult> rotational;
  rotational.reserve(members.size());
  std::vector<std::size_t> selected;
  for (const std::vector<std::size_t>& cluster : members) {
    const auto axis_distance = [&candidates, &cluster](std::size_t a, std::size_t b) {
      return axial_distance(candidates[cluster[a]].pair.axis, candidates[cluster[b]].pair.axis);
    };
    ClusterResult r = run_pam_stage(cluster.size(), axis_distance,
                                    std::min(config.k_rotational, cluster.size()),
                                    config.max_swap_iterations);
    for (std::size_t local : r.medoid_indices) selected.push_back(cluster[local]);
    rotational.push_back(std::move(r));
  }
  std::sort(selected.begin(), selected.end());

  std::vector<GraspCandidate> result;
  result.reserve(selected.size());
  for (std::size_t idx : selected) result.push_back(candidates[idx]);

  if (detail) {
    detail->translational = std::move(translational);
    detail->cluster_members = std::move(members);
    detail->rotational = std::move(rotational);
    detail->selected = std::move(selected);
  }
  return result;
}

}  // namespace graspgen
