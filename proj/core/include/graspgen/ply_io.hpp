#pragma once

#include <string>

#include "graspgen/cloud.hpp"

namespace graspgen {

enum class PlyFormat { Ascii, BinaryLittleEndian };

/// Loads a point cloud from a PLY file. ASCII and binary-little-endian
/// formats are supported; the "vertex" element must carry x, y, z and
/// nx, ny, nz as 32- or 64-bit floats (other scalar properties are skipped).
/// Positions are multiplied by `scale` (e.g. 0.001 for a millimeter file),
/// normals are renormalized, and points within 1e-9 m of an earlier point
/// are dropped.
///
/// Throws ParseError on malformed input, MissingNormalsError when nx/ny/nz
/// are absent, EmptyCloudError when the file has no vertices.
PointCloud load_ply(const std::string& path, double scale = 1.0);

/// Writes a cloud as a PLY file with double-precision x, y, z, nx, ny, nz.
/// Positions are multiplied by `position_scale` on output (e.g. 1000 to emit
/// millimeters). Binary output round-trips positions and normals bit-exact.
void save_ply(const PointCloud& cloud, const std::string& path,
              PlyFormat format = PlyFormat::BinaryLittleEndian,
              double position_scale = 1.0);

}  // namespace graspgen
