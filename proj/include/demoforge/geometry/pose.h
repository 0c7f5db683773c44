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

#ifndef DEMOFORGE_GEOMETRY_POSE_H_
#define DEMOFORGE_GEOMETRY_POSE_H_

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "demoforge/geometry/quat.h"

namespace demoforge::geometry {

// Rigid transform x -> R x + t. Translations in meters.
class Pose {
 public:
  Pose() : translation_(Eigen::Vector3d::Zero()) {}
  Pose(const Quat& rotation, const Eigen::Vector3d& translation)
      : rotation_(rotation), translation_(translation) {}

  static Pose Identity() { return Pose(); }
  static Pose FromTranslation(const Eigen::Vector3d& t) { return Pose(Quat(), t); }
  static Pose FromTranslation(double x, double y, double z) {
    return FromTranslation(Eigen::Vector3d(x, y, z));
  }
  static Pose FromRotation(const Quat& q) { return Pose(q, Eigen::Vector3d::Zero()); }
  static Pose FromMatrix(const Eigen::Matrix4d& m);

  const Quat& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }

  Eigen::Vector3d Apply(const Eigen::Vector3d& point) const {
    return rotation_.Rotate(point) + translation_;
  }
  Pose Inverse() const;
  Eigen::Matrix4d Matrix() const;

 private:
  Quat rotation_;
  Eigen::Vector3d translation_;
};

// compose(a, b): applies b first, then a.
Pose Compose(const Pose& a, const Pose& b);
inline Pose operator*(const Pose& a, const Pose& b) { return Compose(a, b); }

Eigen::Vector3d ApplyPoint(const Pose& pose, const Eigen::Vector3d& point);

// Returns `pose` with `delta` added to its translation; rotation untouched.
Pose ShiftTranslation(const Pose& pose, const Eigen::Vector3d& delta);

// Linear translation + slerp rotation.
Pose Interpolate(const Pose& a, const Pose& b, double t);

// Max of translation distance and rotation angle, for tolerance checks.
struct PoseDelta {
  double translation = 0.0;
  double rotation = 0.0;
};
PoseDelta Difference(const Pose& a, const Pose& b);

// Serialized layout: [w, x, y, z, tx, ty, tz].
std::array<double, 7> ToArray(const Pose& pose);
Pose FromArray(std::span<const double> values);

}  // namespace demoforge::geometry

#endif  // DEMOFORGE_GEOMETRY_POSE_H_
