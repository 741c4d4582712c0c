#include <benchmark/benchmark.h>

#include "graspgen/mesh.hpp"
#include "graspgen/primitives.hpp"
#include "graspgen/sampling.hpp"
#include "graspgen/synthesis.hpp"

namespace {

graspgen::GripperModel bench_gripper(double stroke) {
  graspgen::GripperModel g;
  g.stroke = stroke;
  g.finger_width = 0.012;
  g.finger_thickness = 0.005;
  g.finger_length = 0.04;
  g.mu = 0.5;
  return g;
}

void BM_SynthesizeCube(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const graspgen::TriangleMesh mesh = graspgen::make_box_mesh({0.04, 0.04, 0.04});
  const graspgen::PointCloud cloud = graspgen::sample_mesh(mesh, n, 1);
  const graspgen::GripperModel g = bench_gripper(0.061);
  graspgen::SynthesisConfig config;
  config.build_poses = false;
  for (auto _ : state) {
    auto candidates = graspgen::synthesize(cloud, g, config);
    benchmark::DoNotOptimize(candidates);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(graspgen::pair_count(n)));
}
BENCHMARK(BM_SynthesizeCube)->Arg(1000)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_SynthesizeBar(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const graspgen::TriangleMesh mesh = graspgen::make_box_mesh({0.12, 0.01, 0.01});
  const graspgen::PointCloud cloud = graspgen::sample_mesh(mesh, n, 1);
  const graspgen::GripperModel g = bench_gripper(0.017);
  graspgen::SynthesisConfig config;
  config.build_poses = false;
  for (auto _ : state) {
    auto candidates = graspgen::synthesize(cloud, g, config);
    benchmark::DoNotOptimize(candidates);
  }
}
BENCHMARK(BM_SynthesizeBar)->Arg(2000)->Arg(5000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_CollisionCheck(benchmark::State& state) {
  const graspgen::PointCloud cloud =
      graspgen::make_box_cloud({0.04, 0.04, 0.04}, 0.0025);
  const graspgen::GripperModel g = bench_gripper(0.061);
  const graspgen::SpatialIndex index(cloud, g.stroke);
  const graspgen::ContactPair pair =
      graspgen::make_contact_pair(cloud, 0, static_cast<std::uint32_t>(cloud.size() / 2),
                                  graspgen::GraspSide::Outside, 0.0);
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(graspgen::collision_check(pair, theta, g, index));
    theta += 0.5;
  }
}
BENCHMARK(BM_CollisionCheck);

}  // namespace

BENCHMARK_MAIN();
