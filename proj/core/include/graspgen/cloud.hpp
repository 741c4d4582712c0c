#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "graspgen/geometry.hpp"

namespace graspgen {

/// One object surface sample: position plus outward unit normal.
struct SurfacePoint {
  Vec3 position;
  UnitVec3 normal;
};

/// Ordered list of surface samples with a provenance tag (file path or
/// sampler parameters). Positions are in meters.
struct PointCloud {
  std::vector<SurfacePoint> points;
  std::string source;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  const Vec3& position(std::size_t i) const { return points[i].position; }
  const UnitVec3& normal(std::size_t i) const { return points[i].normal; }
};

/// Removes points closer than `tolerance` to an earlier point, keeping the
/// first occurrence. Duplicate positions would create zero-length connecting
/// vectors during synthesis.
PointCloud deduplicate_points(const PointCloud& cloud, double tolerance = 1e-9);

/// Axis-aligned bounds of the cloud positions. Throws EmptyCloudError on an
/// empty cloud.
void cloud_bounds(const PointCloud& cloud, Vec3& lo, Vec3& hi);

}  // namespace graspgen
