// graspgen-fixtures: writes the synthetic demo parts (cube, cylinder, ring,
// L-bracket, bar) as millimeter PLY point clouds, plus a cube mesh as OBJ
// and STL, so the pipeline can be tried without external data.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "graspgen/mesh.hpp"
#include "graspgen/ply_io.hpp"
#include "graspgen/primitives.hpp"

int main(int argc, char** argv) {
  CLI::App app{"graspgen-fixtures: write synthetic demo parts (millimeters)"};
  std::string outdir = ".";
  app.add_option("outdir", outdir, "Output directory (created if missing)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  namespace fs = std::filesystem;
  try {
    fs::create_directories(outdir);
    const double to_mm = 1000.0;
    const auto path = [&](const char* name) { return (fs::path(outdir) / name).string(); };

    using namespace graspgen;
    save_ply(make_box_cloud({0.040, 0.040, 0.040}, 0.004), path("cube.ply"),
             PlyFormat::Ascii, to_mm);
    save_ply(make_cylinder_cloud(0.015, 0.060, 0.004), path("cylinder.ply"),
             PlyFormat::Ascii, to_mm);
    save_ply(make_ring_cloud(0.015, 0.030, 0.010, 0.004), path("ring.ply"),
             PlyFormat::Ascii, to_mm);
    save_ply(make_lbracket_cloud(0.060, 0.040, 0.012, 0.030, 0.004), path("lbracket.ply"),
             PlyFormat::Ascii, to_mm);
    save_ply(make_bar_cloud(0.120, 0.010, 0.0025), path("bar.ply"), PlyFormat::Ascii, to_mm);

    const TriangleMesh cube = make_box_mesh({0.040, 0.040, 0.040});
    save_obj(cube, path("cube.obj"), to_mm);
    save_stl_binary(cube, path("cube.stl"), to_mm);
    save_obj(make_cylinder_mesh(0.015, 0.060), path("cylinder.obj"), to_mm);
    save_obj(make_ring_mesh(0.015, 0.030, 0.010), path("ring.obj"), to_mm);
    save_obj(make_lbracket_mesh(0.060, 0.040, 0.012, 0.030), path("lbracket.obj"), to_mm);
    save_obj(make_box_mesh({0.120, 0.010, 0.010}), path("bar.obj"), to_mm);

    std::cout << "wrote PLY clouds and OBJ meshes for cube/cylinder/ring/lbracket/bar"
                 " plus cube.stl to " << outdir << " (millimeters)\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "graspgen-fixtures: error: " << e.what() << "\n";
    return 1;
  }
}
