#include <cmath>
#include <fstream>
#include <numbers>

#include "graspgen/errors.hpp"
#include "graspgen/pipeline.hpp"
#include "graspgen/version.hpp"
#include "json_writer.hpp"

namespace graspgen {

const char* to_string(GraspSide side) {
  return side == GraspSide::Outside ? "outside" : "inside";
}

const char* to_string(SideFilter filter) {
  switch (filter) {
    case SideFilter::OutsideOnly:
      return "outside";
    case SideFilter::InsideOnly:
      return "inside";
    case SideFilter::Both:
      return "both";
  }
  return "outside";
}

const char* to_string(InputFormat format) {
  switch (format) {
    case InputFormat::Auto:
      return "auto";
    case InputFormat::Ply:
      return "ply";
    case InputFormat::Obj:
      return "obj";
    case InputFormat::Stl:
      return "stl";
  }
  return "auto";
}

namespace {

using detail::JsonWriter;

void write_vec3(JsonWriter& w, const Vec3& v) {
  w.begin_array(true);
  w.value(v.x);
  w.value(v.y);
  w.value(v.z);
  w.end_array();
}

void write_config(JsonWriter& w, const PipelineConfig& c) {
  w.begin_object();
  w.key("input");
  w.value(c.input_path);
  w.key("format");
  w.value(to_string(c.format));
  w.key("unit");
  w.value(c.unit_name);
  w.key("unit_scale");
  w.value(c.unit_scale);
  w.key("sample_points");
  w.value(static_cast<std::uint64_t>(c.sample_points));
  w.key("sample_seed");
  w.value(static_cast<std::uint64_t>(c.sample_seed));
  w.key("voxel_size");
  if (c.voxel_size)
    w.value(*c.voxel_size);
  else
    w.value(0.0);
  w.key("gripper");
  w.begin_object();
  w.key("stroke");
  w.value(c.gripper.stroke);
  w.key("finger_width");
  w.value(c.gripper.finger_width);
  w.key("finger_thickness");
  w.value(c.gripper.finger_thickness);
  w.key("finger_length");
  w.value(c.gripper.finger_length);
  w.key("mu");
  w.value(c.gripper.mu);
  w.key("safety_factor");
  w.value(c.gripper.safety_factor);
  w.key("rotation_steps");
  w.value(c.gripper.rotation_steps);
  w.key("clearance");
  w.value(c.gripper.clearance);
  w.end_object();
  w.key("side");
  w.value(to_string(c.synthesis.side_filter));
  w.key("k_translational");
  w.value(static_cast<std::uint64_t>(c.clustering.k_translational));
  w.key("k_rotational");
  w.value(static_cast<std::uint64_t>(c.clustering.k_rotational));
  w.key("max_swap_iterations");
  w.value(static_cast<std::uint64_t>(c.clustering.max_swap_iterations));
  w.end_object();
}

void write_counts(JsonWriter& w, const StageCounts& s) {
  w.begin_object();
  w.key("points");
  w.value(s.points);
  w.key("pairs_total");
  w.value(s.pairs_total);
  w.key("pairs_evaluated");
  w.value(s.pairs_evaluated);
  w.key("pass_stroke");
  w.value(s.pass_stroke);
  w.key("pass_friction");
  w.value(s.pass_friction);
  w.key("candidates");
  w.value(s.candidates);
  w.key("final_grasps");
  w.value(s.final_grasps);
  w.end_object();
}

}  // namespace

void export_grasp_json(const GraspSetFile& set, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");

  JsonWriter w(os);
  w.begin_object();
  w.key("schema_version");
  w.value(set.schema_version);
  w.key("metadata");
  w.begin_object();
  w.key("tool");
  w.value("graspgen");
  w.key("tool_version");
  w.value(set.tool_version);
  w.key("generated_at");
  w.value(set.generated_at);
  w.key("input_path");
  w.value(set.input_path);
  w.key("input_format");
  w.value(set.input_format);
  w.key("input_unit");
  w.value(set.input_unit);
  w.key("input_checksum_fnv1a64");
  w.value(set.input_checksum);
  w.key("unit");
  w.value("m");
  w.key("config");
  write_config(w, set.config);
  w.key("stage_counts");
  write_counts(w, set.counts);
  w.end_object();

  w.key("grasps");
  w.begin_array();
  for (const GraspRecord& g : set.grasps) {
    w.begin_object();
    w.key("pair");
    w.begin_array(true);
    w.value(static_cast<std::uint64_t>(g.i));
    w.value(static_cast<std::uint64_t>(g.j));
    w.end_array();
    w.key("contacts");
    w.begin_array();
    write_vec3(w, g.contact_i);
    write_vec3(w, g.contact_j);
    w.end_array();
    w.key("width");
    w.value(g.width);
    w.key("side");
    w.value(to_string(g.side));
    w.key("friction_margin");
    w.value(g.friction_margin);
    w.key("thetas");
    w.begin_array(true);
    for (double t : g.thetas) w.value(t);
    w.end_array();
    w.key("poses");
    w.begin_array();
    for (const Pose& p : g.poses) {
      w.begin_object();
      w.key("translation");
      write_vec3(w, p.translation);
      const Quaternion q = p.rotation.quaternion();
      w.key("quaternion_wxyz");
      w.begin_array(true);
      w.value(q.w);
      w.value(q.x);
      w.value(q.y);
      w.value(q.z);
      w.end_array();
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  os << '\n';
  if (!os) throw IoError("write failure on '" + path + "'");
}

void export_report_json(const StageReport& report, const GraspSetFile& set,
                        const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");

  JsonWriter w(os);
  w.begin_object();
  w.key("tool_version");
  w.value(set.tool_version);
  w.key("generated_at");
  w.value(set.generated_at);
  w.key("input_path");
  w.value(set.input_path);
  w.key("stage_counts");
  write_counts(w, report.counts);
  w.key("timings_seconds");
  w.begin_object();
  w.key("load");
  w.value(report.timings.load_s);
  w.key("downsample");
  w.value(report.timings.downsample_s);
  w.key("synthesis");
  w.value(report.timings.synthesis_s);
  w.key("clustering");
  w.value(report.timings.clustering_s);
  w.end_object();
  w.key("diversity");
  w.begin_object();
  w.key("mean_midpoint_distance");
  w.value(report.mean_midpoint_distance);
  w.key("mean_axial_distance");
  w.value(report.mean_axial_distance);
  w.end_object();
  w.end_object();
  os << '\n';
  if (!os) throw IoError("write failure on '" + path + "'");
}

namespace {

// Distinct, stable per-grasp colors: hue stepped by the golden ratio.
void grasp_color(std::size_t index, unsigned char rgb[3]) {
  const double hue = std::fmod(0.15 + 0.61803398874989485 * static_cast<double>(index), 1.0);
  const double h6 = hue * 6.0;
  const int sector = static_cast<int>(h6) % 6;
  const double f = h6 - std::floor(h6);
  const double q = 1.0 - f;
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = 1; g = f; b = 0; break;
    case 1: r = q; g = 1; b = 0; break;
    case 2: r = 0; g = 1; b = f; break;
    case 3: r = 0; g = q; b = 1; break;
    case 4: r = f; g = 0; b = 1; break;
    default: r = 1; g = 0; b = q; break;
  }
  rgb[0] = static_cast<unsigned char>(std::lround(64 + 191 * r));
  rgb[1] = static_cast<unsigned char>(std::lround(64 + 191 * g));
  rgb[2] = static_cast<unsigned char>(std::lround(64 + 191 * b));
}

struct ColoredPoint {
  float x, y, z;
  unsigned char r, g, b;
};

}  // namespace

void export_visual_ply(const PointCloud& cloud, const GraspSetFile& set,
                       const std::string& path) {
  const double inv_scale = 1.0 / set.config.unit_scale;

  std::vector<ColoredPoint> points;
  points.reserve(cloud.size() + set.grasps.size() * 64);

  const auto push = [&](const Vec3& p, unsigned char r, unsigned char g, unsigned char b) {
    points.push_back(ColoredPoint{static_cast<float>(p.x * inv_scale),
                                  static_cast<float>(p.y * inv_scale),
                                  static_cast<float>(p.z * inv_scale), r, g, b});
  };

  std::vector<char> is_contact(cloud.size(), 0);
  for (const GraspRecord& g : set.grasps) {
    if (g.i >= cloud.size() || g.j >= cloud.size())
      throw InvalidArgumentError("export_visual_ply: grasp indices out of range");
    is_contact[g.i] = 1;
    is_contact[g.j] = 1;
  }

  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (is_contact[i])
      push(cloud.position(i), 255, 0, 0);
    else
      push(cloud.position(i), 0, 255, 0);
  }

  // Axis triads: sampled line points along the pose axes, one triad per
  // pose, one color per grasp.
  const double triad_len = 0.5 * set.config.gripper.finger_length;
  const int samples_per_axis = 6;
  for (std::size_t gi = 0; gi < set.grasps.size(); ++gi) {
    unsigned char rgb[3];
    grasp_color(gi, rgb);
    for (const Pose& pose : set.grasps[gi].poses) {
      for (int axis = 0; axis < 3; ++axis) {
        const Vec3 dir = pose.rotation.column(axis);
        for (int s = 1; s <= samples_per_axis; ++s) {
          const Vec3 p = pose.translation + dir * (triad_len * s / samples_per_axis);
          push(p, rgb[0], rgb[1], rgb[2]);
        }
      }
    }
  }

  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << "ply\nformat binary_little_endian 1.0\n";
  os << "comment graspgen " << version_string << " visualization (" << set.input_unit << ")\n";
  os << "element vertex " << points.size() << "\n";
  os << "property float x\nproperty float y\nproperty float z\n";
  os << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  os << "end_header\n";
  for (const ColoredPoint& p : points) {
    os.write(reinterpret_cast<const char*>(&p.x), 4);
    os.write(reinterpret_cast<const char*>(&p.y), 4);
    os.write(reinterpret_cast<const char*>(&p.z), 4);
    os.put(static_cast<char>(p.r));
    os.put(static_cast<char>(p.g));
    os.put(static_cast<char>(p.b));
  }
  if (!os) throw IoError("write failure on '" + path + "'");
}

}  // namespace graspgen
