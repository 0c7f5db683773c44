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

#ifndef DEMOFORGE_GEOMETRY_QUAT_H_
#define DEMOFORGE_GEOMETRY_QUAT_H_

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace demoforge::geometry {

// Unit quaternion with canonical sign (w >= 0). Every constructor and
// operation renormalizes, so ||q|| = 1 holds to rounding.
class Quat {
 public:
  Quat() : q_(1.0, 0.0, 0.0, 0.0) {}
  Quat(double w, double x, double y, double z);
  explicit Quat(const Eigen::Quaterniond& q);

  static Quat Identity() { return Quat(); }
  // Angle in radians; axis need not be normalized but must be nonzero.
  static Quat FromAxisAngle(const Eigen::Vector3d& axis, double angle);
  // Exponential map of a rotation vector (axis * angle).
  static Quat FromRotationVector(const Eigen::Vector3d& rotation_vector);
  static Quat FromMatrix(const Eigen::Matrix3d& rotation);
  static Quat RotX(double angle) { return FromAxisAngle(Eigen::Vector3d::UnitX(), angle); }
  static Quat RotY(double angle) { return FromAxisAngle(Eigen::Vector3d::UnitY(), angle); }
  static Quat RotZ(double angle) { return FromAxisAngle(Eigen::Vector3d::UnitZ(), angle); }

  double w() const { return q_.w(); }
  double x() const { return q_.x(); }
  double y() const { return q_.y(); }
  double z() const { return q_.z(); }
  const Eigen::Quaterniond& eigen() const { return q_; }

  Eigen::Matrix3d Matrix() const { return q_.toRotationMatrix(); }
  Eigen::Vector3d Rotate(const Eigen::Vector3d& v) const { return q_ * v; }
  Quat Inverse() const;
  // Logarithm map: rotation vector with angle in [0, pi].
  Eigen::Vector3d ToRotationVector() const;
  double Angle() const;

  Quat operator*(const Quat& other) const;

 private:
  void Canonicalize();

  Eigen::Quaterniond q_;
};

// Geodesic angle between two rotations, in [0, pi].
double AngleBetween(const Quat& a, const Quat& b);

// Shortest-arc spherical interpolation; t = 0 and t = 1 return the
// endpoints exactly.
Quat Slerp(const Quat& q0, const Quat& q1, double t);

}  // namespace demoforge::geometry

#endif  // DEMOFORGE_GEOMETRY_QUAT_H_
