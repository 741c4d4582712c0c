#pragma once

#include <cmath>

namespace graspgen {

/// Simplified parallel jaw gripper. All lengths in meters.
///
/// Each finger is modeled as a box: finger_thickness along the closing
/// axis, finger_width laterally, finger_length along the approach axis.
/// The fingertip plane passes through the contact points.
struct GripperModel {
  double stroke = 0.060;           // maximum jaw opening
  double finger_width = 0.015;
  double finger_thickness = 0.005;
  double finger_length = 0.040;
  double mu = 0.5;                 // Coulomb friction coefficient
  double safety_factor = 1.5;      // reserves friction capacity for acceleration-induced forces
  int rotation_steps = 12;         // discretization of the rotation about the closing axis
  double clearance = 0.001;        // inner-cuboid lengthening, absorbs surface unevenness

  /// Effective friction cone half-angle: arctan(mu / safety_factor).
  /// The safety factor divides mu because friction force capacity scales
  /// linearly with the coefficient.
  double effective_cone_angle() const { return std::atan(mu / safety_factor); }

  /// Throws InvalidArgumentError when a field violates its constraints.
  void validate() const;
};

}  // namespace graspgen
