/*
 * Copyright 2026 The Demoforge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "demoforge/geometry/quat.h"

#include <cmath>

namespace demoforge::geometry {
namespace {

constexpr double kSlerpLinearThreshold = 1e-7;

}  // namespace

Quat::Quat(double w, double x, double y, double z) : q_(w, x, y, z) {
  Canonicalize();
}

Quat::Quat(const Eigen::Quaterniond& q) : q_(q) { Canonicalize(); }

Quat Quat::FromAxisAngle(const Eigen::Vector3d& axis, double angle) {
  return Quat(Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis.normalized())));
}

Quat Quat::FromRotationVector(const Eigen::Vector3d& rotation_vector) {
  const double angle = rotation_vector.norm();
  if (angle < 1e-12) {
    // First-order expansion keeps small rotations exact to rounding.
    return Quat(1.0, 0.5 * rotation_vector.x(), 0.5 * rotation_vector.y(),
                0.5 * rotation_vector.z());
  }
  return FromAxisAngle(rotation_vector / angle, angle);
}

Quat Quat::FromMatrix(const Eigen::Matrix3d& rotation) {
  return Quat(Eigen::Quaterniond(rotation));
}

Quat Quat::Inverse() const { return Quat(q_.conjugate()); }

Eigen::Vector3d Quat::ToRotationVector() const {
  const Eigen::Vector3d v = q_.vec();
  const double sin_half = v.norm();
  if (sin_half < 1e-12) return 2.0 * v;
  // w >= 0 by canonicalization, so the angle lies in [0, pi].
  const double angle = 2.0 * std::atan2(sin_half, q_.w());
  return v * (angle / sin_half);
}

double Quat::Angle() const { return 2.0 * std::atan2(q_.vec().norm(), std::abs(q_.w())); }

Quat Quat::operator*(const Quat& other) const { return Quat(q_ * other.q_); }

void Quat::Canonicalize() {
  // Already-unit inputs keep their exact bits, so serialized poses
  // round-trip bit-exactly.
  if (std::abs(q_.squaredNorm() - 1.0) > 4e-16) q_.normalize();
  if (q_.w() < 0.0) q_.coeffs() = -q_.coeffs();
}

double AngleBetween(const Quat& a, const Quat& b) {
  return (a.Inverse() * b).Angle();
}

Quat Slerp(const Quat& q0, const Quat& q1, double t) {
  if (t == 0.0) return q0;
  if (t == 1.0) return q1;
  const Eigen::Quaterniond& a = q0.eigen();
  Eigen::Quaterniond b = q1.eigen();
  double dot = a.coeffs().dot(b.coeffs());
  if (dot < 0.0) {
    b.coeffs() = -b.coeffs();
    dot = -dot;
  }
  // Half-angle between the endpoints, computed robustly near zero.
  const double half_angle =
      std::atan2((b.coeffs() - dot * a.coeffs()).norm(), dot);
  if (half_angle < kSlerpLinearThreshold) {
    return Quat(Eigen::Quaterniond((1.0 - t) * a.coeffs() + t * b.coeffs()));
  }
  const double s = std::sin(half_angle);
  const double wa = std::sin((1.0 - t) * half_angle) / s;
  const double wb = std::sin(t * half_angle) / s;
  return Quat(Eigen::Quaterniond(wa * a.coeffs() + wb * b.coeffs()));
}

}  // namespace demoforge::geometry
