#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "graspgen/cloud.hpp"

namespace graspgen {

/// Box with arbitrary orientation: center, rotation (columns are the box
/// axes) and half extents along those axes. Containment is inclusive on the
/// boundary.
struct OrientedBox {
  Vec3 center;
  Rotation rotation;
  Vec3 half_extents;

  bool contains(const Vec3& p) const {
    const Vec3 d = p - center;
    return std::abs(dot(rotation.column(0), d)) <= half_extents.x &&
           std::abs(dot(rotation.column(1), d)) <= half_extents.y &&
           std::abs(dot(rotation.column(2), d)) <= half_extents.z;
  }

  /// World-axis-aligned bounds enclosing the box.
  void world_aabb(Vec3& lo, Vec3& hi) const;
};

/// Uniform hash grid over point positions supporting radius queries and
/// oriented-box containment queries. Queries return exactly what a
/// brute-force scan over all points would. Immutable after construction;
/// concurrent readers need no synchronization.
class SpatialIndex {
public:
  /// Cell size is normally the gripper stroke: the dominant query is a
  /// radius search with r <= stroke, which then touches O(1) cells.
  SpatialIndex(const PointCloud& cloud, double cell_size);

  std::size_t size() const { return positions_.size(); }
  const std::vector<Vec3>& positions() const { return positions_; }
  double cell_size() const { return cell_; }

  /// Indices of points with ||p - center|| <= radius, ascending.
  std::vector<std::uint32_t> radius_query(const Vec3& center, double radius) const;
  void radius_query_into(const Vec3& center, double radius,
                         std::vector<std::uint32_t>& out) const;

  /// Indices of points inside the box (boundary inclusive), ascending.
  std::vector<std::uint32_t> box_query(const OrientedBox& box) const;

  /// True when at least one point lies inside the box. Early-exits; used by
  /// the collision check hot path.
  bool box_contains_any(const OrientedBox& box) const;

private:
  struct CellKey {
    std::int64_t x, y, z;
    bool operator==(const CellKey&) const = default;
  };
  struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const;
  };

  CellKey key_of(const Vec3& p) const;

  template <class Visitor>  // Visitor(index, position) -> bool (false = stop)
  bool visit_aabb(const Vec3& lo, const Vec3& hi, Visitor&& visit) const;

  std::vector<Vec3> positions_;
  std::unordered_map<CellKey, std::vector<std::uint32_t>, CellKeyHash> cells_;
  CellKey cell_lo_{0, 0, 0};  // occupied cell bounds; query ranges clamp to them
  CellKey cell_hi_{0, 0, 0};
  double cell_ = 1.0;
  double inv_cell_ = 1.0;
};

}  // namespace graspgen
