// Independent reference implementations used to check the library: a
// separately written grasp frame construction, naive all-points collision
// containment, a triple-loop filter chain, and exhaustive k-medoids search.
// These deliberately avoid the library's SpatialIndex, OrientedBox and
// Rotation code paths.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

#include "graspgen/cloud.hpp"
#include "graspgen/gripper.hpp"
#include "graspgen/synthesis.hpp"

namespace oracle {

using graspgen::GraspSide;
using graspgen::GripperModel;
using graspgen::PointCloud;
using graspgen::SideFilter;
using graspgen::SurfacePoint;
using graspgen::Vec3;

struct Mat3 {
  double m[9];  // row-major

  Vec3 mul(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
};

inline Vec3 rotate_about_axis(const Vec3& v, const Vec3& axis_unit, double angle) {
  // Rodrigues: v cos(t) + (k x v) sin(t) + k (k.v)(1 - cos(t)).
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Vec3 kxv = graspgen::cross(axis_unit, v);
  const double kdv = graspgen::dot(axis_unit, v);
  return v * c + kxv * s + axis_unit * (kdv * (1.0 - c));
}

struct Frame {
  Vec3 origin;
  Vec3 x, y, z;  // closing, lateral, approach

  Vec3 to_local(const Vec3& p) const {
    const Vec3 d = p - origin;
    return {graspgen::dot(x, d), graspgen::dot(y, d), graspgen::dot(z, d)};
  }

  Mat3 matrix() const {
    return Mat3{{x.x, y.x, z.x, x.y, y.y, z.y, x.z, y.z, z.z}};
  }
};

// The documented frame convention, written independently of the library:
// local x is the closing axis, local z the approach, theta = 0 projects the
// global basis vector least aligned with the axis (ties x, y, z).
inline Frame grasp_frame(const Vec3& midpoint, const Vec3& axis_unit, double theta) {
  const Vec3 basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  int pick = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    const double a = std::abs(graspgen::dot(basis[k], axis_unit));
    if (a < best) {
      best = a;
      pick = k;
    }
  }
  Vec3 approach0 = basis[pick] - axis_unit * graspgen::dot(basis[pick], axis_unit);
  approach0 *= 1.0 / approach0.norm();
  const Vec3 approach = rotate_about_axis(approach0, axis_unit, theta);
  Frame f;
  f.origin = midpoint;
  f.x = axis_unit;
  f.z = approach;
  f.y = graspgen::cross(approach, axis_unit);
  return f;
}

inline bool stroke_ok(const Vec3& a, const Vec3& b, double stroke) {
  const double d = (b - a).norm();
  return d > 1e-9 && d < stroke;
}

struct FrictionDecision {
  GraspSide side;
  double margin;
};

inline std::optional<FrictionDecision> friction(const SurfacePoint& a, const SurfacePoint& b,
                                                double mu, double safety_factor,
                                                SideFilter allowed) {
  const Vec3 v = b.position - a.position;
  const double norm = v.norm();
  if (!(norm > 1e-9)) return std::nullopt;
  const Vec3 u = v * (1.0 / norm);
  const double alpha = std::atan(mu / safety_factor);
  const auto angle = [](const Vec3& p, const Vec3& q) {
    double d = graspgen::dot(p, q);
    if (d > 1.0) d = 1.0;
    if (d < -1.0) d = -1.0;
    return std::acos(d);
  };
  const double angle_a = angle(u, -a.normal.vec());
  const double angle_b = angle(-u, -b.normal.vec());
  if (angle_a <= alpha && angle_b <= alpha && allowed != SideFilter::InsideOnly)
    return FrictionDecision{GraspSide::Outside, alpha - std::max(angle_a, angle_b)};
  const double in_a = std::numbers::pi - angle_a;
  const double in_b = std::numbers::pi - angle_b;
  if (in_a <= alpha && in_b <= alpha && allowed != SideFilter::OutsideOnly)
    return FrictionDecision{GraspSide::Inside, alpha - std::max(in_a, in_b)};
  return std::nullopt;
}

// Point-in-jaw-sweep test via interval checks in the grasp frame: two finger
// slabs plus the palm slab behind the finger bases.
inline bool in_jaw_region(const Vec3& p, const Frame& frame, double width,
                          const GripperModel& g) {
  const Vec3 q = frame.to_local(p);
  const double inner_half = 0.5 * (width + g.clearance);
  const double outer_half = inner_half + g.finger_thickness;
  const double half_w = 0.5 * g.finger_width;
  if (std::abs(q.y) > half_w) return false;
  const double ax = std::abs(q.x);
  const bool in_finger = ax >= inner_half && ax <= outer_half && q.z >= 0.0 &&
                         q.z <= g.finger_length;
  const bool in_palm = ax <= outer_half && q.z >= g.finger_length &&
                       q.z <= g.finger_length + g.finger_thickness;
  return in_finger || in_palm;
}

// Collision check against every cloud point (no spatial index).
inline bool collision_free(const PointCloud& cloud, std::uint32_t i, std::uint32_t j,
                           double theta, const GripperModel& g) {
  const Vec3& pi = cloud.position(i);
  const Vec3& pj = cloud.position(j);
  const Vec3 v = pj - pi;
  const double width = v.norm();
  const Frame frame = grasp_frame((pi + pj) * 0.5, v * (1.0 / width), theta);
  for (const SurfacePoint& p : cloud.points)
    if (in_jaw_region(p.position, frame, width, g)) return false;
  return true;
}

struct BruteCandidate {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  GraspSide side = GraspSide::Outside;
  double margin = 0.0;
  std::vector<int> theta_steps;  // k with theta = 2*pi*k / rotation_steps
};

// Triple-loop filter chain: every canonical pair, every discrete rotation,
// naive containment over the whole cloud.
inline std::vector<BruteCandidate> synthesize_bruteforce(const PointCloud& cloud,
                                                         const GripperModel& g,
                                                         SideFilter allowed) {
  std::vector<BruteCandidate> out;
  const auto n = static_cast<std::uint32_t>(cloud.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (!stroke_ok(cloud.position(i), cloud.position(j), g.stroke)) continue;
      const auto fr = friction(cloud.points[i], cloud.points[j], g.mu, g.safety_factor, allowed);
      if (!fr) continue;
      BruteCandidate c;
      c.i = i;
      c.j = j;
      c.side = fr->side;
      c.margin = fr->margin;
      for (int k = 0; k < g.rotation_steps; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / g.rotation_steps;
        if (collision_free(cloud, i, j, theta, g)) c.theta_steps.push_back(k);
      }
      if (!c.theta_steps.empty()) out.push_back(std::move(c));
    }
  }
  return out;
}

// Canonical comparison key: (i, j) -> surviving rotation steps.
inline std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<int>> candidate_map(
    const std::vector<BruteCandidate>& candidates) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<int>> m;
  for (const auto& c : candidates) m[{c.i, c.j}] = c.theta_steps;
  return m;
}

inline std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<int>> candidate_map(
    const std::vector<graspgen::GraspCandidate>& candidates, int rotation_steps) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<int>> m;
  for (const auto& c : candidates) {
    std::vector<int> steps;
    steps.reserve(c.valid_thetas.size());
    for (double theta : c.valid_thetas)
      steps.push_back(static_cast<int>(
          std::llround(theta * rotation_steps / (2.0 * std::numbers::pi))));
    m[{c.pair.i, c.pair.j}] = std::move(steps);
  }
  return m;
}

struct BruteMedoids {
  std::vector<std::size_t> medoids;  // lexicographically smallest among optima
  double cost = 0.0;
};

// Exhaustive search over all C(n, k) medoid sets. Cost of a set is the sum
// over items of the distance to the nearest set member.
template <class DistanceFn>
BruteMedoids best_medoids(std::size_t n, DistanceFn&& dist, std::size_t k) {
  std::vector<std::size_t> combo(k);
  for (std::size_t i = 0; i < k; ++i) combo[i] = i;

  BruteMedoids best;
  best.cost = std::numeric_limits<double>::infinity();

  const auto cost_of = [&](const std::vector<std::size_t>& medoids) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double d = std::numeric_limits<double>::infinity();
      for (std::size_t m : medoids) d = std::min(d, dist(j, m));
      total += d;
    }
    return total;
  };

  while (true) {
    const double c = cost_of(combo);
    if (c < best.cost) {  // strict: combos enumerate in lexicographic order
      best.cost = c;
      best.medoids = combo;
    }
    // next combination: rightmost position that can still advance.
    bool advanced = false;
    std::size_t idx = k;
    while (idx-- > 0) {
      if (combo[idx] < n - k + idx) {
        ++combo[idx];
        for (std::size_t l = idx + 1; l < k; ++l) combo[l] = combo[l - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return best;
  }
}

}  // namespace oracle
