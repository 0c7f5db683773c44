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

#include "demoforge/transfer/segments.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "demoforge/common/error.h"
#include "demoforge/demo/demonstration.h"

namespace demoforge::transfer {

using geometry::Pose;

EePath TransferGrasp(const EePath& grasp, const Pose& t_init, const Eigen::Vector3d& x_aff,
                     const Eigen::Vector3d& x_aff_new, const Pose& t_new) {
  const Pose to_local = t_init.Inverse();
  const Eigen::Vector3d delta = x_aff_new - x_aff;
  EePath out;
  out.reserve(grasp.size());
  for (const EeWaypoint& w : grasp) {
    out.push_back({t_new * geometry::ShiftTranslation(to_local * w.pose, delta), w.gripper});
  }
  return out;
}

FunctionFrame ComputeFunctionFrame(const Pose& grasp_pose, const Pose& object_pose,
                                   const Eigen::Vector3d& x_fun) {
  FunctionFrame frame;
  frame.p_fun_ee = grasp_pose.Inverse().Apply(object_pose.Apply(x_fun));
  if (!(frame.p_fun_ee.norm() < kMaxFunctionOffset)) {
    throw Error(ErrorCode::kInvalidArgument, "function point lies " +
                                                 std::to_string(frame.p_fun_ee.norm()) +
                                                 " m from the end effector");
  }
  return frame;
}

EePath TransferSkill(const EePath& skill, const SkillTransfer& params) {
  for (std::size_t i = 0; i < skill.size(); ++i) {
    if (!demo::IsClosed(skill[i].gripper)) {
      throw Error(ErrorCode::kNotGrasped, "gripper open at skill waypoint " + std::to_string(i));
    }
  }
  const FunctionFrame source = ComputeFunctionFrame(params.source_grasp, params.t_init, params.x_fun);
  const FunctionFrame target =
      ComputeFunctionFrame(params.target_grasp, params.t_new, params.x_fun_new);
  EePath out;
  out.reserve(skill.size());
  if (params.mode == SkillMode::kGoalAnchored) {
    for (const EeWaypoint& w : skill) {
      const geometry::Quat& r = w.pose.rotation();
      const Eigen::Vector3d t =
          r.Rotate(source.p_fun_ee) + w.pose.translation() - r.Rotate(target.p_fun_ee);
      out.push_back({Pose(r, t), w.gripper});
    }
    return out;
  }
  const Pose to_local = params.t_init.Inverse();
  const Eigen::Vector3d delta = params.x_fun_new - params.x_fun;
  const Pose source_offset = Pose::FromTranslation(source.p_fun_ee);
  const Pose target_offset_inverse = Pose::FromTranslation(target.p_fun_ee).Inverse();
  for (const EeWaypoint& w : skill) {
    const Pose local = geometry::ShiftTranslation(to_local * (w.pose * source_offset), delta);
    out.push_back({params.t_new * local * target_offset_inverse, w.gripper});
  }
  return out;
}

EePath PlanTransition(const Pose& from, const Pose& to, double step, int min_steps,
                      double gripper, const CollisionCheck& collision_check) {
  if (!(step > 0.0)) throw Error(ErrorCode::kInvalidArgument, "transition step must be positive");
  if (min_steps < 2) throw Error(ErrorCode::kInvalidArgument, "transition needs min_steps >= 2");
  const double distance = (to.translation() - from.translation()).norm();
  const int count = std::max(min_steps, static_cast<int>(std::ceil(distance / step - 1e-9)) + 1);
  EePath path;
  path.reserve(count);
  for (int k = 0; k < count; ++k) {
    Pose pose;
    if (k == 0) {
      pose = from;
    } else if (k == count - 1) {
      pose = to;
    } else {
      pose = geometry::Interpolate(from, to, static_cast<double>(k) / (count - 1));
    }
    if (collision_check && collision_check(pose)) {
      throw CollisionError(static_cast<std::size_t>(k),
                           "transition waypoint " + std::to_string(k) + " collides");
    }
    path.push_back({pose, gripper});
  }
  return path;
}

}  // namespace demoforge::transfer
