#include "graspgen/synthesis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "graspgen/errors.hpp"

namespace graspgen {

void GripperModel::validate() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(stroke)) throw InvalidArgumentError("gripper: stroke must be > 0");
  if (!positive(finger_width)) throw InvalidArgumentError("gripper: finger_width must be > 0");
  if (!positive(finger_thickness))
    throw InvalidArgumentError("gripper: finger_thickness must be > 0");
  if (!positive(finger_length)) throw InvalidArgumentError("gripper: finger_length must be > 0");
  if (!positive(mu)) throw InvalidArgumentError("gripper: mu must be > 0");
  if (!(std::isfinite(safety_factor) && safety_factor >= 1.0))
    throw InvalidArgumentError("gripper: safety_factor must be >= 1");
  if (rotation_steps < 1) throw InvalidArgumentError("gripper: rotation_steps must be >= 1");
  if (!(std::isfinite(clearance) && clearance >= 0.0))
    throw InvalidArgumentError("gripper: clearance must be >= 0");
}

std::uint64_t pair_count(std::uint64_t n_points) {
  if (n_points < 2) return 0;
  // n*(n-1)/2 with the even factor divided first so the product is exact.
  const std::uint64_t a = (n_points % 2 == 0) ? n_points / 2 : n_points;
  const std::uint64_t b = (n_points % 2 == 0) ? n_points - 1 : (n_points - 1) / 2;
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw OverflowError("pair_count: n too large for 64-bit result");
  return a * b;
}

bool check_stroke(const SurfacePoint& a, const SurfacePoint& b, double stroke) {
  const double d = (b.position - a.position).norm();
  return d > 1e-9 && d < stroke;
}

std::optional<FrictionCheck> classify_and_check_friction(const SurfacePoint& a,
                                                         const SurfacePoint& b,
                                                         const GripperModel& gripper,
                                                         SideFilter allowed) {
  const Vec3 v = b.position - a.position;
  const double norm = v.norm();
  if (!(norm > 1e-9)) return std::nullopt;
  const UnitVec3 u = UnitVec3::assume_unit(v * (1.0 / norm));
  const double alpha = gripper.effective_cone_angle();

  // Contact angles between each finger's pressing direction and the
  // negated surface normal. alpha < pi/2, so at most one side can hold.
  const double angle_a = angle_between(u, -a.normal);
  const double angle_b = angle_between(-u, -b.normal);
  if (angle_a <= alpha && angle_b <= alpha) {
    if (allowed == SideFilter::InsideOnly) return std::nullopt;
    return FrictionCheck{GraspSide::Outside, alpha - std::max(angle_a, angle_b)};
  }

  const double inside_a = std::numbers::pi - angle_a;
  const double inside_b = std::numbers::pi - angle_b;
  if (inside_a <= alpha && inside_b <= alpha) {
    if (allowed == SideFilter::OutsideOnly) return std::nullopt;
    return FrictionCheck{GraspSide::Inside, alpha - std::max(inside_a, inside_b)};
  }
  return std::nullopt;
}

ContactPair make_contact_pair(const PointCloud& cloud, std::uint32_t i, std::uint32_t j,
                              GraspSide side, double friction_margin) {
  const Vec3& pi = cloud.position(i);
  const Vec3& pj = cloud.position(j);
  const Vec3 v = pj - pi;
  const double width = v.norm();
  return ContactPair{i,
                     j,
                     v,
                     width,
                     (pi + pj) * 0.5,
                     normalize(v),
                     side,
                     friction_margin};
}

std::array<OrientedBox, 3> jaw_collision_boxes(double width, const GripperModel& g,
                                               const Pose& frame) {
  const double inner_half = 0.5 * (width + g.clearance);
  const Vec3 closing = frame.rotation.column(0);
  const Vec3 approach = frame.rotation.column(2);

  const Vec3 finger_half{0.5 * g.finger_thickness, 0.5 * g.finger_width, 0.5 * g.finger_length};
  const double finger_center_x = inner_half + 0.5 * g.finger_thickness;
  const double finger_center_z = 0.5 * g.finger_length;

  const OrientedBox finger_a{
      frame.translation - closing * finger_center_x + approach * finger_center_z,
      frame.rotation, finger_half};
  const OrientedBox finger_b{
      frame.translation + closing * finger_center_x + approach * finger_center_z,
      frame.rotation, finger_half};
  // Palm crossbar behind the finger bases, spanning the full jaw width.
  const OrientedBox palm{
      frame.translation + approach * (g.finger_length + 0.5 * g.finger_thickness),
      frame.rotation,
      Vec3{inner_half + g.finger_thickness, 0.5 * g.finger_width, 0.5 * g.finger_thickness}};
  return {finger_a, finger_b, palm};
}

bool collision_check(const ContactPair& pair, double theta, const GripperModel& gripper,
                     const SpatialIndex& index) {
  const Pose frame = build_grasp_frame(pair.midpoint, pair.axis, theta);
  for (const OrientedBox& box : jaw_collision_boxes(pair.width, gripper, frame))
    if (index.box_contains_any(box)) return false;
  return true;
}

std::vector<double> discretize_rotations(const ContactPair& pair, const GripperModel& gripper,
                                         const SpatialIndex& index) {
  std::vector<double> valid;
  const int steps = gripper.rotation_steps;
  for (int k = 0; k < steps; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / steps;
    if (collision_check(pair, theta, gripper, index)) valid.push_back(theta);
  }
  return valid;
}

namespace {

struct ChunkResult {
  std::vector<GraspCandidate> candidates;
  SynthesisStats stats;
};

void process_range(const PointCloud& cloud, const GripperModel& gripper,
                   const SynthesisConfig& config, const SpatialIndex& index,
                   std::uint32_t begin, std::uint32_t end, ChunkResult& out) {
  std::vector<std::uint32_t> neighbors;
  for (std::uint32_t i = begin; i < end; ++i) {
    index.radius_query_into(cloud.position(i), gripper.stroke, neighbors);
    for (std::uint32_t j : neighbors) {
      if (j <= i) continue;
      ++out.stats.pairs_evaluated;
      if (!check_stroke(cloud.points[i], cloud.points[j], gripper.stroke)) continue;
      ++out.stats.pass_stroke;
      const auto friction = classify_and_check_friction(cloud.points[i], cloud.points[j],
                                                        gripper, config.side_filter);
      if (!friction) continue;
      ++out.stats.pass_friction;
      ContactPair pair = make_contact_pair(cloud, i, j, friction->side, friction->margin);
      std::vector<double> thetas = discretize_rotations(pair, gripper, index);
      if (thetas.empty()) continue;
      ++out.stats.candidates;
      GraspCandidate candidate{std::move(pair), std::move(thetas), {}};
      if (config.build_poses) {
        candidate.poses.reserve(candidate.valid_thetas.size());
        for (double theta : candidate.valid_thetas)
          candidate.poses.push_back(
              build_grasp_frame(candidate.pair.midpoint, candidate.pair.axis, theta));
      }
      out.candidates.push_back(std::move(candidate));
    }
  }
}

}  // namespace

std::vector<GraspCandidate> synthesize(const PointCloud& cloud, const GripperModel& gripper,
                                       const SynthesisConfig& config, SynthesisStats* stats) {
  if (cloud.empty()) throw EmptyCloudError("synthesize: empty cloud");
  gripper.validate();

  const auto n = static_cast<std::uint32_t>(cloud.size());
  const SpatialIndex index(cloud, gripper.stroke);

  unsigned workers = config.n_threads != 0 ? config.n_threads
                                           : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, n);

  // Static chunking: results are concatenated in chunk order, so the output
  // is identical for any worker count.
  const std::uint32_t chunk_size =
      std::max<std::uint32_t>(1, n / (workers * 8) + (n % (workers * 8) != 0));
  const std::uint32_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<ChunkResult> chunks(n_chunks);

  const auto run_chunk = [&](std::uint32_t c) {
    const std::uint32_t begin = c * chunk_size;
    const std::uint32_t end = std::min(n, begin + chunk_size);
    process_range(cloud, gripper, config, index, begin, end, chunks[c]);
  };

  if (workers <= 1) {
    for (std::uint32_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint32_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::uint32_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
            run_chunk(c);
        } catch (...) {
          const std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  std::vector<GraspCandidate> result;
  SynthesisStats total;
  total.point_count = n;
  total.pairs_total = pair_count(n);
  std::size_t count = 0;
  for (const ChunkResult& c : chunks) count += c.candidates.size();
  result.reserve(count);
  for (ChunkResult& c : chunks) {
    total.pairs_evaluated += c.stats.pairs_evaluated;
    total.pass_stroke += c.stats.pass_stroke;
    total.pass_friction += c.stats.pass_friction;
    total.candidates += c.stats.candidates;
    for (GraspCandidate& g : c.candidates) result.push_back(std::move(g));
  }
  std::sort(result.begin(), result.end(), [](const GraspCandidate& a, const GraspCandidate& b) {
    return a.pair.i != b.pair.i ? a.pair.i < b.pair.i : a.pair.j < b.pair.j;
  });

  if (stats) *stats = total;
  return result;
}

}  // namespace graspgen
