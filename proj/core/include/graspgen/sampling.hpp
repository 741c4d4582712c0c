#pragma once

#include <cstdint>
#include <random>

#include "graspgen/cloud.hpp"
#include "graspgen/mesh.hpp"

namespace graspgen {

/// Deterministic uniform doubles in [0, 1), independent of the standard
/// library's distribution implementations.
class SampleRng {
public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

/// Draws n points from the mesh surface by area-weighted uniform sampling.
/// Each point's normal is the face normal of its source triangle (outward
/// per winding order). The same (mesh, n, seed) always yields the same
/// cloud. Throws DegenerateMeshError when the mesh has zero total area.
PointCloud sample_mesh(const TriangleMesh& mesh, std::size_t n, std::uint64_t seed);

}  // namespace graspgen
