#pragma once

#include "graspgen/cloud.hpp"

namespace graspgen {

/// Structured downsampling: keeps one representative per occupied voxel,
/// the member point nearest the centroid of the voxel's members (ties go to
/// the lowest index). The representative keeps its original normal. Output
/// order follows the original indices, so applying the filter twice with the
/// same voxel size is the identity on the first result.
PointCloud voxel_downsample(const PointCloud& cloud, double voxel);

}  // namespace graspgen
