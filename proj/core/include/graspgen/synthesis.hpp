#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "graspgen/cloud.hpp"
#include "graspgen/gripper.hpp"
#include "graspgen/spatial_index.hpp"

namespace graspgen {

/// Outside: fingers press inward against outward surface normals.
/// Inside: fingers press outward, e.g. against the bore of a ring.
enum class GraspSide { Outside, Inside };

enum class SideFilter { OutsideOnly, InsideOnly, Both };

/// Two-contact grasp axis candidate in canonical order (i < j).
struct ContactPair {
  std::uint32_t i;
  std::uint32_t j;
  Vec3 connecting;        // position_j - position_i
  double width;           // ||connecting||
  Vec3 midpoint;
  UnitVec3 axis;          // connecting / width
  GraspSide side;
  double friction_margin; // min over both contacts of alpha_eff - contact angle, >= 0
};

/// A contact pair plus the discrete rotations about the closing axis that
/// passed the collision check, with one pose per surviving rotation.
struct GraspCandidate {
  ContactPair pair;
  std::vector<double> valid_thetas;  // ascending, each 2*pi*k / rotation_steps
  std::vector<Pose> poses;           // aligned with valid_thetas (empty if not built)
};

struct SynthesisConfig {
  SideFilter side_filter = SideFilter::OutsideOnly;
  bool build_poses = true;   // materialize one Pose per surviving rotation
  unsigned n_threads = 0;    // 0 = hardware concurrency; result is identical for any value
};

/// Pair counts at each filter stage; monotonically non-increasing.
struct SynthesisStats {
  std::uint64_t point_count = 0;
  std::uint64_t pairs_total = 0;      // n*(n-1)/2
  std::uint64_t pairs_evaluated = 0;  // pairs surfaced by the radius queries
  std::uint64_t pass_stroke = 0;
  std::uint64_t pass_friction = 0;
  std::uint64_t candidates = 0;       // pairs with >= 1 collision-free rotation
};

/// n*(n-1)/2 in exact integer arithmetic. Throws OverflowError when the
/// result would not fit in 64 bits.
std::uint64_t pair_count(std::uint64_t n_points);

/// True iff 1e-9 < ||b.position - a.position|| < stroke. Strict at the
/// stroke (the part must fit between the jaws) and at zero (degenerate
/// pairs have no defined axis).
bool check_stroke(const SurfacePoint& a, const SurfacePoint& b, double stroke);

struct FrictionCheck {
  GraspSide side;
  double margin;
};

/// Classifies a pair as an outside or inside grasp and verifies both contact
/// angles against the effective friction cone. With u the unit vector from
/// a to b and alpha = arctan(mu / safety_factor):
///   outside: angle(u, -n_a) <= alpha and angle(-u, -n_b) <= alpha
///   inside:  angle(-u, -n_a) <= alpha and angle(u, -n_b) <= alpha
/// Returns nullopt when neither side holds or the side is filtered out.
std::optional<FrictionCheck> classify_and_check_friction(const SurfacePoint& a,
                                                         const SurfacePoint& b,
                                                         const GripperModel& gripper,
                                                         SideFilter allowed = SideFilter::Both);

ContactPair make_contact_pair(const PointCloud& cloud, std::uint32_t i, std::uint32_t j,
                              GraspSide side, double friction_margin);

/// The three boxes whose union is the region the jaws sweep: two finger
/// boxes with inner faces at (width + clearance) / 2 from the midpoint along
/// the closing axis, and a palm box spanning the full jaw width directly
/// behind the finger bases. Equivalent to subtracting the inner cuboid
/// (extent width + clearance between the fingertips) from the outer cuboid
/// enclosing jaws and palm.
std::array<OrientedBox, 3> jaw_collision_boxes(double width, const GripperModel& gripper,
                                               const Pose& grasp_frame);

/// True when the jaw sweep region at this rotation contains no cloud point
/// (collision-free).
bool collision_check(const ContactPair& pair, double theta, const GripperModel& gripper,
                     const SpatialIndex& index);

/// Evaluates collision_check at theta_k = 2*pi*k / rotation_steps for
/// k = 0 .. rotation_steps-1 and returns the collision-free subset, ascending.
std::vector<double> discretize_rotations(const ContactPair& pair, const GripperModel& gripper,
                                         const SpatialIndex& index);

/// Full filter chain over all canonical pairs within the stroke (found via
/// radius queries; the quadratic pair set is never materialized). Filters run
/// cheapest first: stroke, friction, then rotation/collision. Output is
/// sorted by (i, j) and bit-identical for any worker count.
std::vector<GraspCandidate> synthesize(const PointCloud& cloud, const GripperModel& gripper,
                                       const SynthesisConfig& config = {},
                                       SynthesisStats* stats = nullptr);

}  // namespace graspgen
