#include "graspgen/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "graspgen/errors.hpp"

namespace graspgen {

PointCloud sample_mesh(const TriangleMesh& mesh, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgumentError("sample_mesh: n must be >= 1");
  mesh.validate();

  // Cumulative areas over non-degenerate triangles.
  std::vector<double> cumulative;
  std::vector<std::size_t> triangle_of;
  cumulative.reserve(mesh.triangle_count());
  triangle_of.reserve(mesh.triangle_count());
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const double area = triangle_area(mesh, t);
    if (area <= 1e-14) continue;
    total += area;
    cumulative.push_back(total);
    triangle_of.push_back(t);
  }
  if (cumulative.empty() || !(total > 0.0))
    throw DegenerateMeshError("sample_mesh: mesh has zero surface area");

  SampleRng rng(seed);
  PointCloud cloud;
  cloud.source = "sample_mesh(n=" + std::to_string(n) + ", seed=" + std::to_string(seed) + ")";
  cloud.points.reserve(n);

  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t pick = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
    const auto& tri = mesh.triangles[triangle_of[pick]];
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];

    // Uniform barycentric point via the square-root trick.
    const double su = std::sqrt(rng.uniform());
    const double v = rng.uniform();
    const Vec3 p = a * (1.0 - su) + b * (su * (1.0 - v)) + c * (su * v);
    const UnitVec3 normal = normalize(cross(b - a, c - a));
    cloud.points.push_back(SurfacePoint{p, normal});
  }
  return cloud;
}

}  // namespace graspgen
