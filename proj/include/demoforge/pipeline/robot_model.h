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

#ifndef DEMOFORGE_PIPELINE_ROBOT_MODEL_H_
#define DEMOFORGE_PIPELINE_ROBOT_MODEL_H_

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "demoforge/geometry/pose.h"
#include "demoforge/kinematics/serial_chain.h"
#include "demoforge/mesh/tri_mesh.h"
#include "demoforge/render/rasterizer.h"

namespace demoforge::pipeline {

constexpr int kRobotInstance = 0;
constexpr int kObjectInstance = 1;
constexpr int kGoalInstance = 2;
constexpr int kOtherInstance = 3;

// A link mesh attached to the end effector (frame = -1) or to link `frame`
// of the chain.
struct RobotLink {
  std::shared_ptr<const mesh::TriMesh> mesh;
  int frame = -1;
};

// Robot geometry for rendering. Without a chain, or without link meshes, a
// two-finger gripper proxy at the end effector stands in for the robot.
struct RobotModel {
  std::optional<kinematics::SerialChain> chain;
  std::vector<RobotLink> links;
  std::shared_ptr<const mesh::TriMesh> gripper_open;
  std::shared_ptr<const mesh::TriMesh> gripper_closed;
};

// Palm and wrist behind the tool point (ee -z) and two fingers reaching the
// tool point, opened along ee y.
mesh::TriMesh GripperProxy(bool closed);

RobotModel DefaultRobotModel();

// Posed robot meshes for one step, all with instance kRobotInstance. Link
// meshes are posed by forward kinematics when joints are given; the gripper
// proxy follows ee_pose.
std::vector<render::SceneItem> RobotItems(const RobotModel& model, const geometry::Pose& ee_pose,
                                          double gripper, const Eigen::VectorXd& joints);

}  // namespace demoforge::pipeline

#endif  // DEMOFORGE_PIPELINE_ROBOT_MODEL_H_
