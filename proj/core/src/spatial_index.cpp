#include "graspgen/spatial_index.hpp"

#include <algorithm>
#include <cmath>

#include "graspgen/errors.hpp"

namespace graspgen {

void OrientedBox::world_aabb(Vec3& lo, Vec3& hi) const {
  const auto row_extent = [&](int k) {
    const Vec3 r = rotation.row(k);
    return std::abs(r.x) * half_extents.x + std::abs(r.y) * half_extents.y +
           std::abs(r.z) * half_extents.z;
  };
  const Vec3 half_world{row_extent(0), row_extent(1), row_extent(2)};
  lo = center - half_world;
  hi = center + half_world;
}

std::size_t SpatialIndex::CellKeyHash::operator()(const CellKey& k) const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint64_t v : {static_cast<std::uint64_t>(k.x), static_cast<std::uint64_t>(k.y),
                          static_cast<std::uint64_t>(k.z)}) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

SpatialIndex::CellKey SpatialIndex::key_of(const Vec3& p) const {
  return {static_cast<std::int64_t>(std::floor(p.x * inv_cell_)),
          static_cast<std::int64_t>(std::floor(p.y * inv_cell_)),
          static_cast<std::int64_t>(std::floor(p.z * inv_cell_))};
}

SpatialIndex::SpatialIndex(const PointCloud& cloud, double cell_size) {
  if (cloud.empty()) throw EmptyCloudError("SpatialIndex: empty cloud");
  if (!(cell_size > 0.0)) throw InvalidArgumentError("SpatialIndex: cell size must be > 0");
  cell_ = cell_size;
  inv_cell_ = 1.0 / cell_size;
  positions_.reserve(cloud.size());
  for (const SurfacePoint& p : cloud.points) positions_.push_back(p.position);
  cells_.reserve(cloud.size());
  cell_lo_ = cell_hi_ = key_of(positions_.front());
  for (std::uint32_t i = 0; i < positions_.size(); ++i) {
    const CellKey key = key_of(positions_[i]);
    cell_lo_ = {std::min(cell_lo_.x, key.x), std::min(cell_lo_.y, key.y),
                std::min(cell_lo_.z, key.z)};
    cell_hi_ = {std::max(cell_hi_.x, key.x), std::max(cell_hi_.y, key.y),
                std::max(cell_hi_.z, key.z)};
    cells_[key].push_back(i);
  }
}

template <class Visitor>
bool SpatialIndex::visit_aabb(const Vec3& lo, const Vec3& hi, Visitor&& visit) const {
  CellKey klo = key_of(lo);
  CellKey khi = key_of(hi);
  // Clamp to the occupied bounds so oversized query volumes stay cheap.
  klo = {std::max(klo.x, cell_lo_.x), std::max(klo.y, cell_lo_.y), std::max(klo.z, cell_lo_.z)};
  khi = {std::min(khi.x, cell_hi_.x), std::min(khi.y, cell_hi_.y), std::min(khi.z, cell_hi_.z)};
  for (std::int64_t cx = klo.x; cx <= khi.x; ++cx)
    for (std::int64_t cy = klo.y; cy <= khi.y; ++cy)
      for (std::int64_t cz = klo.z; cz <= khi.z; ++cz) {
        const auto it = cells_.find({cx, cy, cz});
        if (it == cells_.end()) continue;
        for (std::uint32_t idx : it->second)
          if (!visit(idx, positions_[idx])) return false;
      }
  return true;
}

void SpatialIndex::radius_query_into(const Vec3& center, double radius,
                                     std::vector<std::uint32_t>& out) const {
  out.clear();
  if (radius < 0.0) return;
  const Vec3 r{radius, radius, radius};
  const double r_sq = radius * radius;
  visit_aabb(center - r, center + r, [&](std::uint32_t idx, const Vec3& p) {
    if ((p - center).squared_norm() <= r_sq) out.push_back(idx);
    return true;
  });
  std::sort(out.begin(), out.end());
}

std::vector<std::uint32_t> SpatialIndex::radius_query(const Vec3& center, double radius) const {
  std::vector<std::uint32_t> out;
  radius_query_into(center, radius, out);
  return out;
}

std::vector<std::uint32_t> SpatialIndex::box_query(const OrientedBox& box) const {
  std::vector<std::uint32_t> out;
  Vec3 lo, hi;
  box.world_aabb(lo, hi);
  visit_aabb(lo, hi, [&](std::uint32_t idx, const Vec3& p) {
    if (box.contains(p)) out.push_back(idx);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool SpatialIndex::box_contains_any(const OrientedBox& box) const {
  Vec3 lo, hi;
  box.world_aabb(lo, hi);
  bool found = false;
  visit_aabb(lo, hi, [&](std::uint32_t, const Vec3& p) {
    if (box.contains(p)) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace graspgen
