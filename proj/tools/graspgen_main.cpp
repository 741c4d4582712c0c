// graspgen: generates a small, diverse, collision-checked set of 6D grasp
// poses for a parallel jaw gripper from a point cloud or mesh of a known
// rigid object.
//
// Exit codes: 0 = success with at least one grasp, 2 = pipeline ran but
// found no grasp, 1 = error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "graspgen/errors.hpp"
#include "graspgen/pipeline.hpp"
#include "graspgen/version.hpp"

namespace {

struct RawOptions {
  std::string input;
  std::string format = "auto";
  std::string unit = "mm";
  std::uint64_t n_points = 5000;
  std::uint64_t seed = 0;
  double voxel = 0.0;
  double stroke = 0.0;
  double mu = 0.0;
  double safety_factor = 1.5;
  double finger_width = 0.0;
  double finger_thickness = 0.0;
  double finger_length = 0.0;
  int rotation_steps = 12;
  double clearance = 0.0;
  std::string side = "outside";
  std::uint64_t kt = 10;
  std::uint64_t kr = 3;
  unsigned threads = 0;
  std::string out = "grasps.json";
  std::string viz;
  std::string report;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graspgen: diverse collision-checked grasp poses for parallel jaw grippers"};
  app.set_version_flag("--version", std::string("graspgen ") + graspgen::version_string);
  app.set_config("--config", "",
                 "Flat key = value config file mirroring the long flags; command line wins");
  app.allow_config_extras(CLI::config_extras_mode::error);  // typo'd keys must not pass silently

  RawOptions opt;
  app.add_option("--input", opt.input, "Input geometry file (PLY point cloud, OBJ or STL mesh)")
      ->required();
  app.add_option("--format", opt.format, "Input format (default: by file extension)")
      ->check(CLI::IsMember({"auto", "ply", "obj", "stl"}));
  app.add_option("--unit", opt.unit,
                 "Unit of the input file and of all length flags (default mm)")
      ->check(CLI::IsMember({"mm", "m"}));
  app.add_option("--n-points", opt.n_points, "Surface samples for mesh inputs (default 5000)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for mesh surface sampling (default 0)");
  app.add_option("--voxel", opt.voxel, "Voxel size for structured downsampling, in --unit")
      ->check(CLI::PositiveNumber);

  app.add_option("--stroke", opt.stroke, "Maximum jaw opening, in --unit")
      ->required()
      ->check(CLI::PositiveNumber);
  app.add_option("--mu", opt.mu, "Coulomb friction coefficient")
      ->required()
      ->check(CLI::PositiveNumber);
  app.add_option("--safety-factor", opt.safety_factor,
                 "Friction safety factor, >= 1 (default 1.5)")
      ->check(CLI::Range(1.0, 1.0e12));
  app.add_option("--finger-width", opt.finger_width, "Finger width, in --unit (default 15 mm)")
      ->check(CLI::PositiveNumber);
  app.add_option("--finger-thickness", opt.finger_thickness,
                 "Finger thickness, in --unit (default 5 mm)")
      ->check(CLI::PositiveNumber);
  app.add_option("--finger-length", opt.finger_length,
                 "Finger length, in --unit (default 40 mm)")
      ->check(CLI::PositiveNumber);
  app.add_option("--rotation-steps", opt.rotation_steps,
                 "Rotation discretization about the closing axis (default 12)")
      ->check(CLI::PositiveNumber);
  app.add_option("--clearance", opt.clearance,
                 "Inner-cuboid lengthening, in --unit (default 1 mm)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--side", opt.side, "Grasp side filter (default outside)")
      ->check(CLI::IsMember({"outside", "inside", "both"}));

  app.add_option("--kt", opt.kt, "Translational cluster count (default 10)")
      ->check(CLI::PositiveNumber);
  app.add_option("--kr", opt.kr, "Rotational clusters per translational cluster (default 3)")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", opt.threads, "Synthesis worker threads, 0 = auto");

  app.add_option("--out", opt.out, "Grasp set JSON output path (default grasps.json)");
  app.add_option("--viz", opt.viz, "Optional colored PLY visualization output path");
  app.add_option("--report", opt.report, "Optional stage report JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  graspgen::PipelineConfig config;
  config.input_path = opt.input;
  if (opt.format == "ply")
    config.format = graspgen::InputFormat::Ply;
  else if (opt.format == "obj")
    config.format = graspgen::InputFormat::Obj;
  else if (opt.format == "stl")
    config.format = graspgen::InputFormat::Stl;

  const double scale = opt.unit == "m" ? 1.0 : 0.001;
  config.unit_scale = scale;
  config.unit_name = opt.unit;
  config.sample_points = opt.n_points;
  config.sample_seed = opt.seed;
  if (app.count("--voxel")) config.voxel_size = opt.voxel * scale;

  config.gripper.stroke = opt.stroke * scale;
  config.gripper.mu = opt.mu;
  config.gripper.safety_factor = opt.safety_factor;
  config.gripper.finger_width = app.count("--finger-width") ? opt.finger_width * scale : 0.015;
  config.gripper.finger_thickness =
      app.count("--finger-thickness") ? opt.finger_thickness * scale : 0.005;
  config.gripper.finger_length =
      app.count("--finger-length") ? opt.finger_length * scale : 0.040;
  config.gripper.rotation_steps = opt.rotation_steps;
  config.gripper.clearance = app.count("--clearance") ? opt.clearance * scale : 0.001;

  config.synthesis.side_filter = opt.side == "inside" ? graspgen::SideFilter::InsideOnly
                                 : opt.side == "both" ? graspgen::SideFilter::Both
                                                      : graspgen::SideFilter::OutsideOnly;
  config.synthesis.n_threads = opt.threads;
  config.clustering.k_translational = opt.kt;
  config.clustering.k_rotational = opt.kr;

  config.grasp_output = opt.out;
  if (!opt.viz.empty()) config.viz_output = opt.viz;
  if (!opt.report.empty()) config.report_output = opt.report;

  try {
    const graspgen::PipelineResult result = graspgen::run_pipeline(config);

    graspgen::export_grasp_json(result.grasp_set, config.grasp_output);
    if (config.viz_output)
      graspgen::export_visual_ply(result.cloud, result.grasp_set, *config.viz_output);
    if (config.report_output)
      graspgen::export_report_json(result.report, result.grasp_set, *config.report_output);

    const auto& c = result.report.counts;
    std::cout << "input: " << config.input_path << " (" << c.points << " points, unit "
              << config.unit_name << ")\n";
    std::cout << "pairs: " << c.pairs_total << " total, " << c.pairs_evaluated
              << " evaluated after radius pruning\n";
    std::cout << "filters: " << c.pass_stroke << " within stroke, " << c.pass_friction
              << " friction-valid, " << c.candidates << " collision-free candidates\n";
    std::cout << "final: " << c.final_grasps << " grasps after clustering\n";
    std::cout << "timing: load " << result.report.timings.load_s << " s, synthesis "
              << result.report.timings.synthesis_s << " s, clustering "
              << result.report.timings.clustering_s << " s\n";
    std::cout << "wrote " << config.grasp_output;
    if (config.viz_output) std::cout << ", " << *config.viz_output;
    if (config.report_output) std::cout << ", " << *config.report_output;
    std::cout << "\n";

    if (c.final_grasps == 0) {
      std::cout << "no grasp satisfies all criteria for this part/gripper combination\n";
      return 2;
    }
    return 0;
  } catch (const graspgen::Error& e) {
    std::cerr << "graspgen: error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "graspgen: unexpected error: " << e.what() << "\n";
    return 1;
  }
}
