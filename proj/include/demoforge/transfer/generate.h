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

#ifndef DEMOFORGE_TRANSFER_GENERATE_H_
#define DEMOFORGE_TRANSFER_GENERATE_H_

#include <vector>

#include <Eigen/Core>

#include "demoforge/demo/demonstration.h"
#include "demoforge/kinematics/serial_chain.h"
#include "demoforge/transfer/ee_path.h"
#include "demoforge/transfer/segments.h"

namespace demoforge::transfer {

struct GenerateParams {
  SkillMode mode = SkillMode::kGoalAnchored;
  double transition_step = 0.01;  // meters
  int min_steps = 5;
  CollisionCheck collision_check;
  // With a chain, every waypoint is solved by IK, warm-started from the
  // previous solution; the first waypoint starts from ik_seed (or the middle
  // of the joint limits when empty).
  const kinematics::SerialChain* chain = nullptr;
  kinematics::IkParams ik;
  Eigen::VectorXd ik_seed;
};

struct GeneratedTrajectory {
  EePath path;
  int t_grasp = 0;
  demo::StepRange skill_range;
  demo::StepRange grasp_segment;  // transferred source steps [0, t_grasp]
  // Transferred source steps after the skill; empty (begin > end) when the
  // source ends with the skill.
  demo::StepRange retreat_segment{0, -1};
  std::vector<Eigen::VectorXd> joints;  // per waypoint, only with a chain
};

// Source requirements: valid stage boundaries, object pose and keypoints.
// The trajectory is: approach transition from the source's first ee pose,
// transferred grasp segment, transition, transferred skill segment, and
// (when the source continues after the skill) a transition plus the
// object-anchored retreat. Duplicate transition endpoints are dropped.
// Throws CollisionError, kNotGrasped, kIkUnreachable.
GeneratedTrajectory GenerateDemo(const demo::Demonstration& source,
                                 const demo::KeypointAnnotation& target_keypoints,
                                 const geometry::Pose& t_new, const GenerateParams& params);

// Object pose per waypoint: t_new until the grasp, then rigidly carried by
// the end effector while the gripper stays closed, then left where released.
std::vector<geometry::Pose> ObjectPoses(const EePath& path, int t_grasp,
                                        const geometry::Pose& t_new);

}  // namespace demoforge::transfer

#endif  // DEMOFORGE_TRANSFER_GENERATE_H_
