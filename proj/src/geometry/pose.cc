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

#include "demoforge/geometry/pose.h"

#include "demoforge/common/error.h"

namespace demoforge::geometry {

Pose Pose::FromMatrix(const Eigen::Matrix4d& m) {
  return Pose(Quat::FromMatrix(m.topLeftCorner<3, 3>()), m.topRightCorner<3, 1>());
}

Pose Pose::Inverse() const {
  const Quat inv = rotation_.Inverse();
  return Pose(inv, -inv.Rotate(translation_));
}

Eigen::Matrix4d Pose::Matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_.Matrix();
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

Pose Compose(const Pose& a, const Pose& b) {
  return Pose(a.rotation() * b.rotation(), a.Apply(b.translation()));
}

Eigen::Vector3d ApplyPoint(const Pose& pose, const Eigen::Vector3d& point) {
  return pose.Apply(point);
}

Pose ShiftTranslation(const Pose& pose, const Eigen::Vector3d& delta) {
  return Pose(pose.rotation(), pose.translation() + delta);
}

Pose Interpolate(const Pose& a, const Pose& b, double t) {
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  return Pose(Slerp(a.rotation(), b.rotation(), t),
              a.translation() + t * (b.translation() - a.translation()));
}

PoseDelta Difference(const Pose& a, const Pose& b) {
  return {(a.translation() - b.translation()).norm(),
          AngleBetween(a.rotation(), b.rotation())};
}

std::array<double, 7> ToArray(const Pose& pose) {
  const Quat& q = pose.rotation();
  const Eigen::Vector3d& t = pose.translation();
  return {q.w(), q.x(), q.y(), q.z(), t.x(), t.y(), t.z()};
}

Pose FromArray(std::span<const double> values) {
  if (values.size() != 7) {
    throw Error(ErrorCode::kParseError, "pose needs 7 values [w,x,y,z,tx,ty,tz]");
  }
  const Eigen::Vector4d q(values[0], values[1], values[2], values[3]);
  if (!(q.norm() > 1e-12) || !q.allFinite()) {
    throw Error(ErrorCode::kParseError, "pose quaternion is zero or not finite");
  }
  return Pose(Quat(values[0], values[1], values[2], values[3]),
              Eigen::Vector3d(values[4], values[5], values[6]));
}

}  // namespace demoforge::geometry
