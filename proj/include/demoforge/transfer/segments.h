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

#ifndef DEMOFORGE_TRANSFER_SEGMENTS_H_
#define DEMOFORGE_TRANSFER_SEGMENTS_H_

#include <functional>

#include <Eigen/Core>

#include "demoforge/geometry/pose.h"
#include "demoforge/transfer/ee_path.h"

namespace demoforge::transfer {

// Object-anchored replay: each pose P becomes T' * shift(T_init^-1 * P) with
// shift adding (x_aff' - x_aff) to the translation. Gripper values are copied.
EePath TransferGrasp(const EePath& grasp, const geometry::Pose& t_init,
                     const Eigen::Vector3d& x_aff, const Eigen::Vector3d& x_aff_new,
                     const geometry::Pose& t_new);

// Function point in the end-effector frame at grasp. The function frame
// shares the ee orientation.
struct FunctionFrame {
  Eigen::Vector3d p_fun_ee = Eigen::Vector3d::Zero();
};

constexpr double kMaxFunctionOffset = 1.0;  // meters

// p_fun_ee = grasp_pose^-1 * object_pose * x_fun. Throws kInvalidArgument
// when the offset is not below kMaxFunctionOffset.
FunctionFrame ComputeFunctionFrame(const geometry::Pose& grasp_pose,
                                   const geometry::Pose& object_pose,
                                   const Eigen::Vector3d& x_fun);

enum class SkillMode { kGoalAnchored, kLiteral };

struct SkillTransfer {
  geometry::Pose source_grasp;  // ee pose at the source grasp
  geometry::Pose target_grasp;  // ee pose at the transferred grasp
  geometry::Pose t_init;        // source object pose while grasped
  geometry::Pose t_new;         // target object pose while grasped
  Eigen::Vector3d x_fun = Eigen::Vector3d::Zero();
  Eigen::Vector3d x_fun_new = Eigen::Vector3d::Zero();
  SkillMode mode = SkillMode::kGoalAnchored;
};

// Goal-anchored: keeps each source orientation R_t and moves the translation
// to R_t p + t_t - R_t p', so the target function point retraces the source
// function point in the world.
// Literal: F_t = P_t * (I, p); L_t = shift(T_init^-1 F_t, x_fun' - x_fun);
// P'_t = T' * L_t * (I, p')^-1.
// Throws kNotGrasped when the gripper is open anywhere in the segment.
EePath TransferSkill(const EePath& skill, const SkillTransfer& params);

// World position of the function point carried by an ee pose.
inline Eigen::Vector3d FunctionPointWorld(const geometry::Pose& ee, const FunctionFrame& frame) {
  return ee.Apply(frame.p_fun_ee);
}

// Returns true when a waypoint pose is in collision.
using CollisionCheck = std::function<bool(const geometry::Pose&)>;

// K = max(min_steps, ceil(d / step) + 1) waypoints for a translation of
// length d: positions linear, orientations slerped, both endpoints included
// exactly, so adjacent positions are at most `step` apart. Every waypoint
// carries `gripper`. Throws CollisionError with the first colliding index.
EePath PlanTransition(const geometry::Pose& from, const geometry::Pose& to, double step,
                      int min_steps, double gripper, const CollisionCheck& collision_check = {});

}  // namespace demoforge::transfer

#endif  // DEMOFORGE_TRANSFER_SEGMENTS_H_
