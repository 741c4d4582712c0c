#include "graspgen/voxel_filter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "graspgen/errors.hpp"

namespace graspgen {

namespace {

struct VoxelKey {
  std::int64_t x, y, z;
  bool operator==(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
  std::size_t operator()(const VoxelKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t v : {static_cast<std::uint64_t>(k.x),
                            static_cast<std::uint64_t>(k.y),
                            static_cast<std::uint64_t>(k.z)}) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

PointCloud voxel_downsample(const PointCloud& cloud, double voxel) {
  if (!(voxel > 0.0)) throw InvalidArgumentError("voxel_downsample: voxel must be > 0");

  const double inv = 1.0 / voxel;
  std::unordered_map<VoxelKey, std::vector<std::size_t>, VoxelKeyHash> groups;
  groups.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.position(i);
    groups[{static_cast<std::int64_t>(std::floor(p.x * inv)),
            static_cast<std::int64_t>(std::floor(p.y * inv)),
            static_cast<std::int64_t>(std::floor(p.z * inv))}]
        .push_back(i);
  }

  std::vector<std::size_t> representatives;
  representatives.reserve(groups.size());
  for (const auto& [key, members] : groups) {
    (void)key;
    Vec3 centroid;
    for (std::size_t i : members) centroid += cloud.position(i);
    centroid *= 1.0 / static_cast<double>(members.size());

    std::size_t best = members.front();
    double best_d = (cloud.position(best) - centroid).squared_norm();
    for (std::size_t i : members) {
      const double d = (cloud.position(i) - centroid).squared_norm();
      if (d < best_d || (d == best_d && i < best)) {
        best_d = d;
        best = i;
      }
    }
    representatives.push_back(best);
  }
  std::sort(representatives.begin(), representatives.end());

  PointCloud out;
  out.source = cloud.source;
  out.points.reserve(representatives.size());
  for (std::size_t i : representatives) out.points.push_back(cloud.points[i]);
  return out;
}

}  // namespace graspgen
