#pragma once

#include <optional>
#include <string>

#include "graspgen/clustering.hpp"
#include "graspgen/cloud.hpp"
#include "graspgen/synthesis.hpp"

namespace graspgen {

enum class InputFormat { Auto, Ply, Obj, Stl };

/// Everything one end-to-end run needs. Lengths are in meters; the CLI
/// converts from the declared input unit before filling this in.
struct PipelineConfig {
  std::string input_path;
  InputFormat format = InputFormat::Auto;
  double unit_scale = 0.001;        // meters per input-file unit (default: millimeters)
  std::string unit_name = "mm";

  std::size_t sample_points = 5000; // mesh inputs only
  std::uint64_t sample_seed = 0;
  std::optional<double> voxel_size; // meters; absent = no downsampling

  GripperModel gripper;
  SynthesisConfig synthesis;
  ClusteringConfig clustering;

  std::string grasp_output = "grasps.json";
  std::optional<std::string> viz_output;
  std::optional<std::string> report_output;
};

/// One exported grasp: the contact pair plus every surviving rotation.
struct GraspRecord {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  Vec3 contact_i;
  Vec3 contact_j;
  double width = 0.0;             // meters
  GraspSide side = GraspSide::Outside;
  double friction_margin = 0.0;   // radians
  std::vector<double> thetas;     // radians
  std::vector<Pose> poses;        // aligned with thetas
};

/// Candidate counts at each filter stage; monotonically non-increasing
/// after the pair total.
struct StageCounts {
  std::uint64_t points = 0;
  std::uint64_t pairs_total = 0;
  std::uint64_t pairs_evaluated = 0;
  std::uint64_t pass_stroke = 0;
  std::uint64_t pass_friction = 0;
  std::uint64_t candidates = 0;
  std::uint64_t final_grasps = 0;
};

struct StageTimings {
  double load_s = 0.0;
  double downsample_s = 0.0;
  double synthesis_s = 0.0;
  double clustering_s = 0.0;
};

/// Per-stage counts and wall clock, plus diversity statistics over the
/// final grasp set (mean pairwise midpoint distance, mean pairwise axial
/// distance between grasp axes).
struct StageReport {
  StageCounts counts;
  StageTimings timings;
  double mean_midpoint_distance = 0.0;  // meters
  double mean_axial_distance = 0.0;     // radians
};

/// Serializable result document: metadata plus the grasp list.
struct GraspSetFile {
  std::string tool_version;
  int schema_version = 0;
  std::string generated_at;       // RFC 3339 UTC; the only field allowed to differ between reruns
  std::string input_path;
  std::string input_format;
  std::string input_unit;
  std::string input_checksum;     // FNV-1a 64 of the raw input bytes, hex
  PipelineConfig config;          // effective configuration, meters
  StageCounts counts;
  std::vector<GraspRecord> grasps;
};

struct PipelineResult {
  PointCloud cloud;               // the cloud synthesis actually ran on
  std::vector<GraspCandidate> final_grasps;
  GraspSetFile grasp_set;
  StageReport report;
};

/// load/sample -> optional voxel downsample -> synthesize -> cluster.
/// Zero final grasps is a reportable outcome, not an error (the CLI maps it
/// to exit code 2). Module errors propagate as PipelineError with the stage
/// name prefixed.
PipelineResult run_pipeline(const PipelineConfig& config);

/// UTF-8 JSON with a schema version, stable key order and floats carrying
/// 17 significant digits (bit-exact round trip). See docs/grasp-set-schema.md.
void export_grasp_json(const GraspSetFile& set, const std::string& path);

/// StageReport as JSON (counts, timings, diversity statistics).
void export_report_json(const StageReport& report, const GraspSetFile& set,
                        const std::string& path);

/// Colored binary PLY: cloud points green, contact points of final grasps
/// red, plus a small axis triad of sampled line points per pose with a
/// unique color per grasp. Positions are written in the input file's unit.
void export_visual_ply(const PointCloud& cloud, const GraspSetFile& set,
                       const std::string& path);

/// FNV-1a 64-bit checksum of a file's bytes, lowercase hex.
std::string file_checksum_fnv1a(const std::string& path);

/// Current time as RFC 3339 UTC (e.g. "2026-08-11T12:00:00Z").
std::string current_timestamp_utc();

const char* to_string(GraspSide side);
const char* to_string(SideFilter filter);
const char* to_string(InputFormat format);

}  // namespace graspgen
