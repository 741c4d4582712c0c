#include "graspgen/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "graspgen/errors.hpp"

namespace graspgen {

namespace {

struct CellKey {
  std::int64_t x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
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

std::int64_t cell_coord(double v, double inv_cell) {
  const double c = std::floor(v * inv_cell);
  if (!(c >= -9.0e18 && c <= 9.0e18))
    throw InvalidArgumentError("coordinate out of indexable range");
  return static_cast<std::int64_t>(c);
}

}  // namespace

PointCloud deduplicate_points(const PointCloud& cloud, double tolerance) {
  if (!(tolerance > 0.0))
    throw InvalidArgumentError("deduplicate_points: tolerance must be > 0");

  PointCloud out;
  out.source = cloud.source;
  out.points.reserve(cloud.points.size());

  const double inv_cell = 1.0 / tolerance;
  const double tol_sq = tolerance * tolerance;
  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> grid;
  grid.reserve(cloud.points.size());

  for (const SurfacePoint& p : cloud.points) {
    const CellKey key{cell_coord(p.position.x, inv_cell),
                      cell_coord(p.position.y, inv_cell),
                      cell_coord(p.position.z, inv_cell)};
    bool duplicate = false;
    for (std::int64_t dx = -1; dx <= 1 && !duplicate; ++dx)
      for (std::int64_t dy = -1; dy <= 1 && !duplicate; ++dy)
        for (std::int64_t dz = -1; dz <= 1 && !duplicate; ++dz) {
          const auto it = grid.find({key.x + dx, key.y + dy, key.z + dz});
          if (it == grid.end()) continue;
          for (std::size_t idx : it->second) {
            if ((out.points[idx].position - p.position).squared_norm() <= tol_sq) {
              duplicate = true;
              break;
            }
          }
        }
    if (duplicate) continue;
    grid[key].push_back(out.points.size());
    out.points.push_back(p);
  }
  return out;
}

void cloud_bounds(const PointCloud& cloud, Vec3& lo, Vec3& hi) {
  if (cloud.empty()) throw EmptyCloudError("cloud_bounds: empty cloud");
  lo = hi = cloud.points.front().position;
  for (const SurfacePoint& p : cloud.points) {
    lo.x = std::min(lo.x, p.position.x);
    lo.y = std::min(lo.y, p.position.y);
    lo.z = std::min(lo.z, p.position.z);
    hi.x = std::max(hi.x, p.position.x);
    hi.y = std::max(hi.y, p.position.y);
    hi.z = std::max(hi.z, p.position.z);
  }
}

}  // namespace graspgen
