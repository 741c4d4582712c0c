#include "graspgen/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace graspgen {

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

UnitVec3 normalize(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 1e-12))
    throw ZeroVectorError("normalize: vector norm below 1e-12");
  return UnitVec3::assume_unit(v * (1.0 / n));
}

double angle_between(const UnitVec3& a, const UnitVec3& b) {
  return std::acos(clamp_unit(dot(a, b)));
}

double axial_distance(const UnitVec3& a, const UnitVec3& b) {
  return std::acos(clamp_unit(std::abs(dot(a, b))));
}

Rotation Rotation::from_columns(const Vec3& cx, const Vec3& cy, const Vec3& cz) {
  return Rotation({cx.x, cy.x, cz.x,  //
                   cx.y, cy.y, cz.y,  //
                   cx.z, cy.z, cz.z});
}

Rotation Rotation::from_axis_angle(const UnitVec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  const double ux = axis.x(), uy = axis.y(), uz = axis.z();
  return Rotation({c + ux * ux * t, ux * uy * t - uz * s, ux * uz * t + uy * s,
                   uy * ux * t + uz * s, c + uy * uy * t, uy * uz * t - ux * s,
                   uz * ux * t - uy * s, uz * uy * t + ux * s, c + uz * uz * t});
}

Rotation Rotation::from_quaternion(const Quaternion& q) {
  const double n = q.norm();
  if (!(n > 1e-12))
    throw ZeroVectorError("Rotation::from_quaternion: zero quaternion");
  const double w = q.w / n, x = q.x / n, y = q.y / n, z = q.z / n;
  return Rotation({1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
                   2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
                   2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)});
}

Rotation Rotation::operator*(const Rotation& o) const {
  std::array<double, 9> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[3 * i + j] = m_[3 * i] * o.m_[j] + m_[3 * i + 1] * o.m_[3 + j] +
                     m_[3 * i + 2] * o.m_[6 + j];
  return Rotation(r);
}

Rotation Rotation::transposed() const {
  return Rotation({m_[0], m_[3], m_[6],  //
                   m_[1], m_[4], m_[7],  //
                   m_[2], m_[5], m_[8]});
}

double Rotation::determinant() const {
  return dot(row(0), cross(row(1), row(2)));
}

bool Rotation::is_orthonormal(double tolerance) const {
  const Rotation rtr = transposed() * (*this);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(rtr.at(i, j) - expected) > tolerance) return false;
    }
  return std::abs(determinant() - 1.0) <= tolerance;
}

Quaternion Rotation::quaternion() const {
  // Shepperd's method: pick the largest of w, x, y, z to avoid cancellation.
  const double t = m_[0] + m_[4] + m_[8];
  Quaternion q;
  if (t > 0.0) {
    const double r = std::sqrt(1.0 + t);
    const double s = 0.5 / r;
    q.w = 0.5 * r;
    q.x = (m_[7] - m_[5]) * s;
    q.y = (m_[2] - m_[6]) * s;
    q.z = (m_[3] - m_[1]) * s;
  } else if (m_[0] >= m_[4] && m_[0] >= m_[8]) {
    const double r = std::sqrt(1.0 + m_[0] - m_[4] - m_[8]);
    const double s = 0.5 / r;
    q.w = (m_[7] - m_[5]) * s;
    q.x = 0.5 * r;
    q.y = (m_[1] + m_[3]) * s;
    q.z = (m_[2] + m_[6]) * s;
  } else if (m_[4] >= m_[8]) {
    const double r = std::sqrt(1.0 - m_[0] + m_[4] - m_[8]);
    const double s = 0.5 / r;
    q.w = (m_[2] - m_[6]) * s;
    q.x = (m_[1] + m_[3]) * s;
    q.y = 0.5 * r;
    q.z = (m_[5] + m_[7]) * s;
  } else {
    const double r = std::sqrt(1.0 - m_[0] - m_[4] + m_[8]);
    const double s = 0.5 / r;
    q.w = (m_[3] - m_[1]) * s;
    q.x = (m_[2] + m_[6]) * s;
    q.y = (m_[5] + m_[7]) * s;
    q.z = 0.5 * r;
  }
  const double n = q.norm();
  q.w /= n;
  q.x /= n;
  q.y /= n;
  q.z /= n;
  // Canonical sign so q and -q serialize identically.
  bool flip = q.w < 0.0;
  if (q.w == 0.0) {
    if (q.x != 0.0)
      flip = q.x < 0.0;
    else if (q.y != 0.0)
      flip = q.y < 0.0;
    else
      flip = q.z < 0.0;
  }
  if (flip) {
    q.w = -q.w;
    q.x = -q.x;
    q.y = -q.y;
    q.z = -q.z;
  }
  return q;
}

UnitVec3 reference_approach(const UnitVec3& axis) {
  const Vec3 basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  int best = 0;
  double best_abs = std::abs(dot(basis[0], axis.vec()));
  for (int k = 1; k < 3; ++k) {
    const double a = std::abs(dot(basis[k], axis.vec()));
    if (a < best_abs) {
      best_abs = a;
      best = k;
    }
  }
  const Vec3 e = basis[best];
  const Vec3 projected = e - dot(e, axis.vec()) * axis.vec();
  return normalize(projected);
}

Pose build_grasp_frame(const Vec3& midpoint, const UnitVec3& axis, double theta) {
  const UnitVec3 approach0 = reference_approach(axis);
  const UnitVec3 approach = Rotation::from_axis_angle(axis, theta) * approach0;
  const Vec3 lateral = cross(approach.vec(), axis.vec());
  return Pose{Rotation::from_columns(axis.vec(), lateral, approach.vec()), midpoint};
}

}  // namespace graspgen
