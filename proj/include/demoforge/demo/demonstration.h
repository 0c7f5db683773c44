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

#ifndef DEMOFORGE_DEMO_DEMONSTRATION_H_
#define DEMOFORGE_DEMO_DEMONSTRATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "demoforge/geometry/pose.h"
#include "demoforge/pointcloud/assemble.h"
#include "demoforge/pointcloud/point_cloud.h"

namespace demoforge::demo {

using pointcloud::StepRange;

// Gripper opening in [0, 1]; at or below this value the gripper is closed.
constexpr double kGripperClosedThreshold = 0.5;
// Closed steps in a row needed to register a grasp.
constexpr int kGraspPersistence = 3;

inline bool IsClosed(double gripper) { return gripper <= kGripperClosedThreshold; }

// Keypoints in the object's canonical mesh frame (meters).
struct KeypointAnnotation {
  Eigen::Vector3d affording_point = Eigen::Vector3d::Zero();
  Eigen::Vector3d function_point = Eigen::Vector3d::Zero();
};

struct DemoStep {
  geometry::Pose ee_pose;  // world frame
  double gripper = 1.0;
  Eigen::VectorXd joints;  // empty when no chain is configured
  pointcloud::SegmentedPointCloud cloud;
};

struct Demonstration {
  std::vector<DemoStep> steps;
  int t_grasp = 0;
  StepRange skill_range;
  geometry::Pose object_pose;  // object canonical frame -> world at step 0
  KeypointAnnotation keypoints;
  std::string mesh_id;
  uint64_t seed = 0;
  int mesh_index = -1;  // task coordinates in a generation run
  int pose_index = -1;

  int size() const { return static_cast<int>(steps.size()); }
};

std::vector<double> GripperChannel(const Demonstration& demo);

// First t whose gripper value and the next kGraspPersistence - 1 values are
// all closed. Throws kNoGraspFound.
int ExtractGraspTime(std::span<const double> gripper);

enum class Stage { kGrasp, kSkill, kTransition };

// Grasp covers [0, t_grasp], skill covers skill_range, transition the rest.
Stage StageOf(int t, int t_grasp, const StepRange& skill_range);

// Checks 0 <= t_grasp < t_s <= t_e < steps, that t_grasp is the first
// persistent closure, and that the gripper stays closed over [t_grasp, t_e].
// Also checks that all non-empty clouds share one size. Throws
// kInvalidArgument.
void Validate(const Demonstration& demo);

}  // namespace demoforge::demo

#endif  // DEMOFORGE_DEMO_DEMONSTRATION_H_
