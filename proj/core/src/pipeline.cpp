#include "graspgen/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>

#include "graspgen/errors.hpp"
#include "graspgen/mesh.hpp"
#include "graspgen/ply_io.hpp"
#include "graspgen/sampling.hpp"
#include "graspgen/version.hpp"
#include "graspgen/voxel_filter.hpp"

namespace graspgen {

std::string file_checksum_fnv1a(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::uint64_t h = 1469598103934665603ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
    if (!in) break;
  }
  char hex[17];
  static const char digits[] = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) hex[i] = digits[(h >> (60 - 4 * i)) & 0xf];
  hex[16] = '\0';
  return std::string(hex);
}

std::string current_timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

namespace {

InputFormat detect_format(const PipelineConfig& config) {
  if (config.format != InputFormat::Auto) return config.format;
  std::string ext;
  const auto dot = config.input_path.rfind('.');
  if (dot != std::string::npos) ext = config.input_path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == "ply") return InputFormat::Ply;
  if (ext == "obj") return InputFormat::Obj;
  if (ext == "stl") return InputFormat::Stl;
  throw InvalidArgumentError("cannot infer input format from '" + config.input_path +
                             "' (use --format)");
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <class Fn>
auto run_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const Error& e) {
    throw PipelineError(stage, e.what());
  }
}

void diversity_stats(const std::vector<GraspCandidate>& grasps, StageReport& report) {
  const std::size_t n = grasps.size();
  if (n < 2) {
    report.mean_midpoint_distance = 0.0;
    report.mean_axial_distance = 0.0;
    return;
  }
  double sum_mid = 0.0;
  double sum_axial = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      sum_mid += (grasps[a].pair.midpoint - grasps[b].pair.midpoint).norm();
      sum_axial += axial_distance(grasps[a].pair.axis, grasps[b].pair.axis);
      ++pairs;
    }
  report.mean_midpoint_distance = sum_mid / static_cast<double>(pairs);
  report.mean_axial_distance = sum_axial / static_cast<double>(pairs);
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  run_stage("config", [&] {
    config.gripper.validate();
    if (!(config.unit_scale > 0.0))
      throw InvalidArgumentError("unit_scale must be > 0");
    if (config.voxel_size && !(*config.voxel_size > 0.0))
      throw InvalidArgumentError("voxel size must be > 0");
    if (config.sample_points < 1)
      throw InvalidArgumentError("sample_points must be >= 1");
    return 0;
  });

  PipelineResult result;
  StageReport& report = result.report;
  const InputFormat format = run_stage("config", [&] { return detect_format(config); });

  auto t0 = std::chrono::steady_clock::now();
  result.cloud = run_stage("load", [&] {
    switch (format) {
      case InputFormat::Ply:
        return load_ply(config.input_path, config.unit_scale);
      case InputFormat::Obj:
        return sample_mesh(load_obj(config.input_path, config.unit_scale),
                           config.sample_points, config.sample_seed);
      case InputFormat::Stl:
        return sample_mesh(load_stl(config.input_path, config.unit_scale),
                           config.sample_points, config.sample_seed);
      default:
        throw InvalidArgumentError("unresolved input format");
    }
  });
  report.timings.load_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  if (config.voxel_size) {
    result.cloud = run_stage("downsample",
                             [&] { return voxel_downsample(result.cloud, *config.voxel_size); });
  }
  report.timings.downsample_s = seconds_since(t0);
  report.counts.points = result.cloud.size();

  t0 = std::chrono::steady_clock::now();
  SynthesisStats synth_stats;
  std::vector<GraspCandidate> candidates = run_stage("synthesis", [&] {
    return synthesize(result.cloud, config.gripper, config.synthesis, &synth_stats);
  });
  report.timings.synthesis_s = seconds_since(t0);
  report.counts.pairs_total = synth_stats.pairs_total;
  report.counts.pairs_evaluated = synth_stats.pairs_evaluated;
  report.counts.pass_stroke = synth_stats.pass_stroke;
  report.counts.pass_friction = synth_stats.pass_friction;
  report.counts.candidates = synth_stats.candidates;

  t0 = std::chrono::steady_clock::now();
  if (!candidates.empty()) {
    result.final_grasps = run_stage(
        "clustering", [&] { return cluster_grasps(candidates, config.clustering); });
  }
  report.timings.clustering_s = seconds_since(t0);
  report.counts.final_grasps = result.final_grasps.size();
  diversity_stats(result.final_grasps, report);

  // Assemble the serializable document.
  GraspSetFile& set = result.grasp_set;
  set.tool_version = version_string;
  set.schema_version = grasp_set_schema_version;
  set.generated_at = current_timestamp_utc();
  set.input_path = config.input_path;
  set.input_format = to_string(format);
  set.input_unit = config.unit_name;
  set.input_checksum = run_stage("load", [&] { return file_checksum_fnv1a(config.input_path); });
  set.config = config;
  set.config.format = format;
  set.counts = report.counts;
  set.grasps.reserve(result.final_grasps.size());
  for (const GraspCandidate& c : result.final_grasps) {
    GraspRecord record;
    record.i = c.pair.i;
    record.j = c.pair.j;
    record.contact_i = result.cloud.position(c.pair.i);
    record.contact_j = result.cloud.position(c.pair.j);
    record.width = c.pair.width;
    record.side = c.pair.side;
    record.friction_margin = c.pair.friction_margin;
    record.thetas = c.valid_thetas;
    if (!c.poses.empty()) {
      record.poses = c.poses;
    } else {
      record.poses.reserve(c.valid_thetas.size());
      for (double theta : c.valid_thetas)
        record.poses.push_back(build_grasp_frame(c.pair.midpoint, c.pair.axis, theta));
    }
    set.grasps.push_back(std::move(record));
  }

  return result;
}

}  // namespace graspgen
