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

#include "demoforge/pipeline/robot_model.h"

#include "demoforge/demo/demonstration.h"
#include "demoforge/mesh/primitives.h"

namespace demoforge::pipeline {

using geometry::Pose;

mesh::TriMesh GripperProxy(bool closed) {
  const double finger_y = closed ? 0.009 : 0.035;
  std::vector<mesh::TriMesh> parts;
  parts.push_back(mesh::Transformed(mesh::Box("palm", {0.012, 0.045, 0.012}),
                                    Pose::FromTranslation(0.0, 0.0, -0.052)));
  parts.push_back(mesh::Transformed(mesh::Box("wrist", {0.02, 0.02, 0.04}),
                                    Pose::FromTranslation(0.0, 0.0, -0.104)));
  for (const double side : {-1.0, 1.0}) {
    parts.push_back(mesh::Transformed(mesh::Box("finger", {0.008, 0.004, 0.022}),
                                      Pose::FromTranslation(0.0, side * (finger_y + 0.004),
                                                            -0.018)));
  }
  return mesh::Merge(closed ? "gripper_closed" : "gripper_open", parts);
}

RobotModel DefaultRobotModel() {
  RobotModel model;
  model.gripper_open = std::make_shared<const mesh::TriMesh>(GripperProxy(false));
  model.gripper_closed = std::make_shared<const mesh::TriMesh>(GripperProxy(true));
  return model;
}

std::vector<render::SceneItem> RobotItems(const RobotModel& model, const Pose& ee_pose,
                                          double gripper, const Eigen::VectorXd& joints) {
  std::vector<render::SceneItem> items;
  const bool use_links = model.chain.has_value() && !model.links.empty() && joints.size() > 0;
  if (use_links) {
    const std::vector<Pose> frames = kinematics::LinkFrames(*model.chain, joints);
    for (const RobotLink& link : model.links) {
      const Pose& frame = link.frame < 0 ? frames.back() : frames.at(link.frame);
      items.push_back({link.mesh.get(), frame, kRobotInstance});
    }
  }
  const bool has_ee_link = use_links && std::any_of(model.links.begin(), model.links.end(),
                                                    [](const RobotLink& l) { return l.frame < 0; });
  if (!has_ee_link) {
    const mesh::TriMesh* proxy =
        demo::IsClosed(gripper) ? model.gripper_closed.get() : model.gripper_open.get();
    if (proxy != nullptr) items.push_back({proxy, ee_pose, kRobotInstance});
  }
  return items;
}

}  // namespace demoforge::pipeline
