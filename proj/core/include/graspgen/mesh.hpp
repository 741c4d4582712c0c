#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "graspgen/geometry.hpp"

namespace graspgen {

/// Indexed triangle mesh. Vertex normals are optional (empty or one per
/// vertex) and informational only; sampling always uses face normals
/// derived from the winding order.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::vector<Vec3> vertex_normals;

  std::size_t triangle_count() const { return triangles.size(); }

  /// Throws ParseError when a triangle references a vertex out of range.
  void validate() const;
};

/// Area of one triangle in m^2.
double triangle_area(const TriangleMesh& mesh, std::size_t t);

/// Total surface area in m^2.
double surface_area(const TriangleMesh& mesh);

/// Drops triangles with area <= min_area (degenerate slivers break
/// normal computation and area-weighted sampling).
TriangleMesh clean_mesh(TriangleMesh mesh, double min_area = 1e-14);

/// Loads a Wavefront OBJ (v / vn / f records, polygons fan-triangulated,
/// negative indices resolved relative to the current vertex count).
/// Vertex positions are multiplied by `scale`. The result is cleaned.
TriangleMesh load_obj(const std::string& path, double scale = 1.0);

/// Loads an STL file (binary or ASCII, auto-detected). Facet normals from
/// the file are discarded; normals are recomputed from the winding order
/// because STL files frequently carry garbage normals. Exactly coincident
/// vertices are merged. The result is cleaned.
TriangleMesh load_stl(const std::string& path, double scale = 1.0);

void save_obj(const TriangleMesh& mesh, const std::string& path, double position_scale = 1.0);
void save_stl_binary(const TriangleMesh& mesh, const std::string& path,
                     double position_scale = 1.0);

}  // namespace graspgen
