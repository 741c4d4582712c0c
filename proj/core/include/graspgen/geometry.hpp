#pragma once

#include <array>
#include <cmath>

#include "graspgen/errors.hpp"

namespace graspgen {

/// 3D vector. Positions and translations are in meters, directions are
/// dimensionless. All angles in this library are radians.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }

  constexpr double squared_norm() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(squared_norm()); }
  bool is_finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Unit-norm direction. The constructor enforces |norm - 1| <= 1e-9;
/// use normalize() for arbitrary input vectors.
class UnitVec3 {
public:
  UnitVec3(double x, double y, double z) : v_(x, y, z) {
    if (std::abs(v_.norm() - 1.0) > 1e-9)
      throw InvalidArgumentError("UnitVec3: components are not unit-norm");
  }

  /// Wraps a vector that is already unit-norm by construction
  /// (e.g. the image of a unit vector under a rotation).
  static UnitVec3 assume_unit(const Vec3& v) { return UnitVec3(v, unchecked_tag{}); }

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }
  const Vec3& vec() const { return v_; }

  UnitVec3 operator-() const { return UnitVec3(-v_, unchecked_tag{}); }

private:
  struct unchecked_tag {};
  UnitVec3(const Vec3& v, unchecked_tag) : v_(v) {}

  Vec3 v_;
};

inline double dot(const UnitVec3& a, const UnitVec3& b) { return dot(a.vec(), b.vec()); }

/// v / ||v||. Throws ZeroVectorError when ||v|| <= 1e-12.
UnitVec3 normalize(const Vec3& v);

/// Angle between two unit vectors in [0, pi]. The dot product is clamped
/// to [-1, 1] before acos.
double angle_between(const UnitVec3& a, const UnitVec3& b);

/// Sign-invariant angle between two axes in [0, pi/2]: acos(|a.b|).
/// A grasp axis and its negation describe the same physical axis, so
/// axial_distance(a, b) == axial_distance(-a, b).
double axial_distance(const UnitVec3& a, const UnitVec3& b);

/// Unit quaternion, scalar-first (w, x, y, z).
struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
};

/// Rotation in SO(3), stored as a row-major 3x3 matrix. A quaternion view
/// is available via quaternion().
class Rotation {
public:
  Rotation() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

  static Rotation identity() { return Rotation(); }
  static Rotation from_columns(const Vec3& cx, const Vec3& cy, const Vec3& cz);
  static Rotation from_axis_angle(const UnitVec3& axis, double angle);
  static Rotation from_quaternion(const Quaternion& q);

  double at(int row, int col) const { return m_[3 * row + col]; }
  Vec3 row(int r) const { return {m_[3 * r], m_[3 * r + 1], m_[3 * r + 2]}; }
  Vec3 column(int c) const { return {m_[c], m_[3 + c], m_[6 + c]}; }
  const std::array<double, 9>& matrix() const { return m_; }

  Vec3 operator*(const Vec3& v) const {
    return {dot(row(0), v), dot(row(1), v), dot(row(2), v)};
  }
  UnitVec3 operator*(const UnitVec3& u) const {
    return UnitVec3::assume_unit(*this * u.vec());
  }
  Rotation operator*(const Rotation& o) const;

  Rotation transposed() const;
  double determinant() const;
  bool is_orthonormal(double tolerance = 1e-9) const;

  /// Unit quaternion with canonical sign (w >= 0; on w == 0 the first
  /// nonzero of x, y, z is positive), so equal rotations serialize equally.
  Quaternion quaternion() const;

private:
  explicit Rotation(const std::array<double, 9>& m) : m_(m) {}

  std::array<double, 9> m_;
};

/// Rigid transform in SE(3).
struct Pose {
  Rotation rotation;
  Vec3 translation;

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
};

/// Approach direction at theta = 0 for a given closing axis: the global
/// basis vector with the smallest |dot| against the axis (ties broken in
/// x, y, z order), projected orthogonal to the axis and normalized.
/// Deterministic and singularity-free for any unit axis.
UnitVec3 reference_approach(const UnitVec3& axis);

/// Grasp frame for a contact pair. Local +x is the gripper closing axis
/// (mapped to `axis`), local +z is the approach axis pointing from the
/// fingertips toward the gripper palm, local +y completes the right-handed
/// frame. theta rotates the frame about `axis`; theta = 0 uses
/// reference_approach(axis) as the +z direction.
Pose build_grasp_frame(const Vec3& midpoint, const UnitVec3& axis, double theta);

}  // namespace graspgen
