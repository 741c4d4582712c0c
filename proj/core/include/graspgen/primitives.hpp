#pragma once

#include "graspgen/cloud.hpp"
#include "graspgen/mesh.hpp"

namespace graspgen {

/// Synthetic demo/test parts. All clouds carry exact outward unit normals,
/// sit centered at the origin, are axis-aligned, and sample faces at cell
/// centers (no points on edges, where the normal would be ambiguous).
/// Dimensions and `step`/`spacing` in meters.

/// Box with full extents (ex, ey, ez); six gridded faces.
PointCloud make_box_cloud(const Vec3& extents, double step);

/// Long square bar: box of extents (length, side, side); the major axis is x.
PointCloud make_bar_cloud(double length, double side, double step);

/// Cylinder with axis z: lateral wall plus optional cap annuli.
PointCloud make_cylinder_cloud(double radius, double height, double spacing, bool caps = true);

/// Annular ring with axis z: outer wall, bore wall (normals pointing into
/// the bore, toward the axis) and two flat annulus caps. Inside grasps
/// across the bore are geometrically possible when 2*inner_radius fits the
/// gripper stroke.
PointCloud make_ring_cloud(double inner_radius, double outer_radius, double height,
                           double spacing);

/// L-shaped bracket: horizontal leg of length leg_a and vertical leg of
/// height leg_b, both `thickness` thick, extruded by `depth` along y.
PointCloud make_lbracket_cloud(double leg_a, double leg_b, double thickness, double depth,
                               double step);

/// Box mesh with 12 triangles, outward winding.
TriangleMesh make_box_mesh(const Vec3& extents);

/// Closed cylinder mesh with `segments` facets around the z axis.
TriangleMesh make_cylinder_mesh(double radius, double height, int segments = 48);

/// Closed annular ring mesh: outer wall, bore wall and two flat annulus
/// caps, `segments` facets around the z axis.
TriangleMesh make_ring_mesh(double inner_radius, double outer_radius, double height,
                            int segments = 48);

/// L-bracket prism mesh (same outline as make_lbracket_cloud).
TriangleMesh make_lbracket_mesh(double leg_a, double leg_b, double thickness, double depth);

}  // namespace graspgen
