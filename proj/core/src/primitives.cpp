#include "graspgen/primitives.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "graspgen/errors.hpp"

namespace graspgen {

namespace {

int cells_for(double length, double step) {
  return std::max(1, static_cast<int>(std::llround(length / step)));
}

// Gridded rectangle: origin + su*u + sv*v for cell centers su in (0, lu),
// sv in (0, lv); constant outward normal.
void add_face(PointCloud& cloud, const Vec3& origin, const Vec3& u_dir, double lu,
              const Vec3& v_dir, double lv, const UnitVec3& normal, double step) {
  const int nu = cells_for(lu, step);
  const int nv = cells_for(lv, step);
  for (int iu = 0; iu < nu; ++iu)
    for (int iv = 0; iv < nv; ++iv) {
      const double su = (iu + 0.5) * lu / nu;
      const double sv = (iv + 0.5) * lv / nv;
      cloud.points.push_back(SurfacePoint{origin + u_dir * su + v_dir * sv, normal});
    }
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) throw InvalidArgumentError(std::string(what) + " must be > 0");
}

}  // namespace

PointCloud make_box_cloud(const Vec3& extents, double step) {
  check_positive(extents.x, "box extent x");
  check_positive(extents.y, "box extent y");
  check_positive(extents.z, "box extent z");
  check_positive(step, "step");

  PointCloud cloud;
  cloud.source = "box";
  const double hx = extents.x / 2, hy = extents.y / 2, hz = extents.z / 2;
  const Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
  // +x / -x
  add_face(cloud, {hx, -hy, -hz}, ey, extents.y, ez, extents.z, UnitVec3(1, 0, 0), step);
  add_face(cloud, {-hx, -hy, -hz}, ey, extents.y, ez, extents.z, UnitVec3(-1, 0, 0), step);
  // +y / -y
  add_face(cloud, {-hx, hy, -hz}, ex, extents.x, ez, extents.z, UnitVec3(0, 1, 0), step);
  add_face(cloud, {-hx, -hy, -hz}, ex, extents.x, ez, extents.z, UnitVec3(0, -1, 0), step);
  // +z / -z
  add_face(cloud, {-hx, -hy, hz}, ex, extents.x, ey, extents.y, UnitVec3(0, 0, 1), step);
  add_face(cloud, {-hx, -hy, -hz}, ex, extents.x, ey, extents.y, UnitVec3(0, 0, -1), step);
  return cloud;
}

PointCloud make_bar_cloud(double length, double side, double step) {
  PointCloud cloud = make_box_cloud({length, side, side}, step);
  cloud.source = "bar";
  return cloud;
}

PointCloud make_cylinder_cloud(double radius, double height, double spacing, bool caps) {
  check_positive(radius, "radius");
  check_positive(height, "height");
  check_positive(spacing, "spacing");

  PointCloud cloud;
  cloud.source = "cylinder";
  const double two_pi = 2.0 * std::numbers::pi;

  const int n_circ = std::max(8, static_cast<int>(std::llround(two_pi * radius / spacing)));
  const int n_rows = cells_for(height, spacing);
  for (int iz = 0; iz < n_rows; ++iz) {
    const double z = -height / 2 + (iz + 0.5) * height / n_rows;
    for (int ia = 0; ia < n_circ; ++ia) {
      const double a = two_pi * ia / n_circ;
      const double c = std::cos(a), s = std::sin(a);
      cloud.points.push_back(
          SurfacePoint{{radius * c, radius * s, z}, UnitVec3::assume_unit({c, s, 0})});
    }
  }
  if (caps) {
    const int n_rad = cells_for(radius, spacing);
    for (int ir = 0; ir < n_rad; ++ir) {
      const double r = (ir + 0.5) * radius / n_rad;
      const int m = std::max(6, static_cast<int>(std::llround(two_pi * r / spacing)));
      for (int ia = 0; ia < m; ++ia) {
        const double a = two_pi * ia / m;
        const Vec3 p{r * std::cos(a), r * std::sin(a), 0};
        cloud.points.push_back(SurfacePoint{{p.x, p.y, height / 2}, UnitVec3(0, 0, 1)});
        cloud.points.push_back(SurfacePoint{{p.x, p.y, -height / 2}, UnitVec3(0, 0, -1)});
      }
    }
  }
  return cloud;
}

PointCloud make_ring_cloud(double inner_radius, double outer_radius, double height,
                           double spacing) {
  check_positive(inner_radius, "inner_radius");
  check_positive(height, "height");
  check_positive(spacing, "spacing");
  if (!(outer_radius > inner_radius))
    throw InvalidArgumentError("ring: outer_radius must exceed inner_radius");

  PointCloud cloud;
  cloud.source = "ring";
  const double two_pi = 2.0 * std::numbers::pi;
  const int n_rows = cells_for(height, spacing);

  const std::pair<double, double> walls[] = {{outer_radius, 1.0}, {inner_radius, -1.0}};
  for (const auto& [radius, outward] : walls) {
    const int n_circ = std::max(8, static_cast<int>(std::llround(two_pi * radius / spacing)));
    for (int iz = 0; iz < n_rows; ++iz) {
      const double z = -height / 2 + (iz + 0.5) * height / n_rows;
      for (int ia = 0; ia < n_circ; ++ia) {
        const double a = two_pi * ia / n_circ;
        const double c = std::cos(a), s = std::sin(a);
        cloud.points.push_back(SurfacePoint{{radius * c, radius * s, z},
                                            UnitVec3::assume_unit({outward * c, outward * s, 0})});
      }
    }
  }

  const int n_rad = cells_for(outer_radius - inner_radius, spacing);
  for (int ir = 0; ir < n_rad; ++ir) {
    const double r = inner_radius + (ir + 0.5) * (outer_radius - inner_radius) / n_rad;
    const int m = std::max(6, static_cast<int>(std::llround(two_pi * r / spacing)));
    for (int ia = 0; ia < m; ++ia) {
      const double a = two_pi * ia / m;
      const Vec3 p{r * std::cos(a), r * std::sin(a), 0};
      cloud.points.push_back(SurfacePoint{{p.x, p.y, height / 2}, UnitVec3(0, 0, 1)});
      cloud.points.push_back(SurfacePoint{{p.x, p.y, -height / 2}, UnitVec3(0, 0, -1)});
    }
  }
  return cloud;
}

PointCloud make_lbracket_cloud(double leg_a, double leg_b, double thickness, double depth,
                               double step) {
  check_positive(leg_a, "leg_a");
  check_positive(leg_b, "leg_b");
  check_positive(thickness, "thickness");
  check_positive(depth, "depth");
  check_positive(step, "step");
  if (!(leg_a > thickness && leg_b > thickness))
    throw InvalidArgumentError("lbracket: legs must be longer than the thickness");

  // L cross-section in the xz plane, extruded along y; bounding box
  // [0, leg_a] x [0, depth] x [0, leg_b], shifted to be centered afterwards.
  PointCloud cloud;
  cloud.source = "lbracket";
  const Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};

  const double a = leg_a, b = leg_b, t = thickness, d = depth;
  // Outline faces.
  add_face(cloud, {0, 0, 0}, ex, a, ey, d, UnitVec3(0, 0, -1), step);      // bottom
  add_face(cloud, {a, 0, 0}, ez, t, ey, d, UnitVec3(1, 0, 0), step);       // right end
  add_face(cloud, {t, 0, t}, ex, a - t, ey, d, UnitVec3(0, 0, 1), step);   // horizontal leg top
  add_face(cloud, {t, 0, t}, ez, b - t, ey, d, UnitVec3(1, 0, 0), step);   // inner wall
  add_face(cloud, {0, 0, b}, ex, t, ey, d, UnitVec3(0, 0, 1), step);       // vertical leg top
  add_face(cloud, {0, 0, 0}, ez, b, ey, d, UnitVec3(-1, 0, 0), step);      // left wall
  // Caps over the L region.
  const auto in_l = [&](double x, double z) { return z <= t || x <= t; };
  const int nx = cells_for(a, step);
  const int nz = cells_for(b, step);
  for (int ix = 0; ix < nx; ++ix)
    for (int iz = 0; iz < nz; ++iz) {
      const double x = (ix + 0.5) * a / nx;
      const double z = (iz + 0.5) * b / nz;
      if (!in_l(x, z)) continue;
      cloud.points.push_back(SurfacePoint{{x, 0, z}, UnitVec3(0, -1, 0)});
      cloud.points.push_back(SurfacePoint{{x, d, z}, UnitVec3(0, 1, 0)});
    }

  const Vec3 shift{-a / 2, -d / 2, -b / 2};
  for (SurfacePoint& p : cloud.points) p.position += shift;
  return cloud;
}

namespace {

// Side wall between two stacked vertex rings of equal size. `flip` reverses
// the winding (used for the bore of a ring, whose outward normal points
// toward the axis).
void add_wall(TriangleMesh& mesh, std::uint32_t bottom_start, std::uint32_t top_start,
              int segments, bool flip) {
  for (int s = 0; s < segments; ++s) {
    const auto s1 = static_cast<std::uint32_t>((s + 1) % segments);
    const std::uint32_t b0 = bottom_start + static_cast<std::uint32_t>(s);
    const std::uint32_t b1 = bottom_start + s1;
    const std::uint32_t t0 = top_start + static_cast<std::uint32_t>(s);
    const std::uint32_t t1 = top_start + s1;
    if (!flip) {
      mesh.triangles.push_back({b0, b1, t1});
      mesh.triangles.push_back({b0, t1, t0});
    } else {
      mesh.triangles.push_back({b0, t1, b1});
      mesh.triangles.push_back({b0, t0, t1});
    }
  }
}

std::uint32_t add_circle_vertices(TriangleMesh& mesh, double radius, double z, int segments) {
  const auto start = static_cast<std::uint32_t>(mesh.vertices.size());
  for (int s = 0; s < segments; ++s) {
    const double a = 2.0 * std::numbers::pi * s / segments;
    mesh.vertices.push_back({radius * std::cos(a), radius * std::sin(a), z});
  }
  return start;
}

}  // namespace

TriangleMesh make_cylinder_mesh(double radius, double height, int segments) {
  check_positive(radius, "radius");
  check_positive(height, "height");
  if (segments < 3) throw InvalidArgumentError("cylinder: segments must be >= 3");

  TriangleMesh mesh;
  const std::uint32_t bottom = add_circle_vertices(mesh, radius, -height / 2, segments);
  const std::uint32_t top = add_circle_vertices(mesh, radius, height / 2, segments);
  add_wall(mesh, bottom, top, segments, false);

  const auto center_bottom = static_cast<std::uint32_t>(mesh.vertices.size());
  mesh.vertices.push_back({0, 0, -height / 2});
  const auto center_top = static_cast<std::uint32_t>(mesh.vertices.size());
  mesh.vertices.push_back({0, 0, height / 2});
  for (int s = 0; s < segments; ++s) {
    const auto s1 = static_cast<std::uint32_t>((s + 1) % segments);
    mesh.triangles.push_back({center_bottom, bottom + s1, bottom + static_cast<std::uint32_t>(s)});
    mesh.triangles.push_back({center_top, top + static_cast<std::uint32_t>(s), top + s1});
  }
  return mesh;
}

TriangleMesh make_ring_mesh(double inner_radius, double outer_radius, double height,
                            int segments) {
  check_positive(inner_radius, "inner_radius");
  check_positive(height, "height");
  if (!(outer_radius > inner_radius))
    throw InvalidArgumentError("ring: outer_radius must exceed inner_radius");
  if (segments < 3) throw InvalidArgumentError("ring: segments must be >= 3");

  TriangleMesh mesh;
  const std::uint32_t outer_bottom = add_circle_vertices(mesh, outer_radius, -height / 2, segments);
  const std::uint32_t outer_top = add_circle_vertices(mesh, outer_radius, height / 2, segments);
  const std::uint32_t inner_bottom = add_circle_vertices(mesh, inner_radius, -height / 2, segments);
  const std::uint32_t inner_top = add_circle_vertices(mesh, inner_radius, height / 2, segments);

  add_wall(mesh, outer_bottom, outer_top, segments, false);
  add_wall(mesh, inner_bottom, inner_top, segments, true);  // bore, normals toward axis
  // Annulus caps: top normal +z, bottom normal -z.
  for (int s = 0; s < segments; ++s) {
    const auto s1 = static_cast<std::uint32_t>((s + 1) % segments);
    const std::uint32_t s0 = static_cast<std::uint32_t>(s);
    mesh.triangles.push_back({inner_top + s0, outer_top + s0, outer_top + s1});
    mesh.triangles.push_back({inner_top + s0, outer_top + s1, inner_top + s1});
    mesh.triangles.push_back({inner_bottom + s0, outer_bottom + s1, outer_bottom + s0});
    mesh.triangles.push_back({inner_bottom + s0, inner_bottom + s1, outer_bottom + s1});
  }
  return mesh;
}

TriangleMesh make_lbracket_mesh(double leg_a, double leg_b, double thickness, double depth) {
  check_positive(leg_a, "leg_a");
  check_positive(leg_b, "leg_b");
  check_positive(thickness, "thickness");
  check_positive(depth, "depth");
  if (!(leg_a > thickness && leg_b > thickness))
    throw InvalidArgumentError("lbracket: legs must be longer than the thickness");

  // L outline in the xz plane, extruded along +y; shifted so the bounding
  // box is centered at the origin. A helper vertex at (t, 0) splits each cap
  // into the two leg rectangles.
  const double a = leg_a, b = leg_b, t = thickness, d = depth;
  const Vec3 shift{-a / 2, -d / 2, -b / 2};
  const double outline[7][2] = {{0, 0}, {a, 0}, {a, t}, {t, t}, {t, b}, {0, b}, {t, 0}};

  TriangleMesh mesh;
  for (double y : {0.0, d})
    for (const auto& xz : outline) mesh.vertices.push_back(Vec3{xz[0], y, xz[1]} + shift);
  const std::uint32_t top = 7;  // index offset of the y = depth copy

  // Caps (vertical leg rectangle + horizontal leg rectangle). The listed
  // winding gives the bottom cap its outward -y normal; the top cap reverses.
  const std::uint32_t cap_tris[4][3] = {{0, 6, 4}, {0, 4, 5}, {6, 1, 2}, {6, 2, 3}};
  for (const auto& tri : cap_tris) {
    mesh.triangles.push_back({tri[0], tri[1], tri[2]});
    mesh.triangles.push_back({top + tri[0], top + tri[2], top + tri[1]});
  }

  // Side walls along the outline edges, outward winding.
  const std::uint32_t edges[6][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
  for (const auto& e : edges) {
    const std::uint32_t b0 = e[0], b1 = e[1];
    mesh.triangles.push_back({b1, b0, top + b0});
    mesh.triangles.push_back({b1, top + b0, top + b1});
  }
  return mesh;
}

TriangleMesh make_box_mesh(const Vec3& extents) {
  check_positive(extents.x, "box extent x");
  check_positive(extents.y, "box extent y");
  check_positive(extents.z, "box extent z");

  const double hx = extents.x / 2, hy = extents.y / 2, hz = extents.z / 2;
  TriangleMesh mesh;
  mesh.vertices = {{-hx, -hy, -hz}, {hx, -hy, -hz}, {hx, hy, -hz}, {-hx, hy, -hz},
                   {-hx, -hy, hz},  {hx, -hy, hz},  {hx, hy, hz},  {-hx, hy, hz}};
  mesh.triangles = {
      {0, 2, 1}, {0, 3, 2},  // -z
      {4, 5, 6}, {4, 6, 7},  // +z
      {0, 1, 5}, {0, 5, 4},  // -y
      {2, 3, 7}, {2, 7, 6},  // +y
      {1, 2, 6}, {1, 6, 5},  // +x
      {3, 0, 4}, {3, 4, 7},  // -x
  };
  return mesh;
}

}  // namespace graspgen
