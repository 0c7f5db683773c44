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

#include "demoforge/transfer/generate.h"

#include <string>

#include "demoforge/common/error.h"

namespace demoforge::transfer {

using geometry::Pose;

namespace {

// Appends a planned transition without its first waypoint; without its last
// one too when `drop_last` (the next segment starts there).
void AppendTransition(EePath& path, const EePath& transition, bool drop_last) {
  const std::size_t end = transition.size() - (drop_last ? 1 : 0);
  for (std::size_t i = 1; i < end; ++i) path.push_back(transition[i]);
}

std::vector<Eigen::VectorXd> SolveJoints(const EePath& path, const GenerateParams& params) {
  const kinematics::SerialChain& chain = *params.chain;
  Eigen::VectorXd q = params.ik_seed;
  if (q.size() != chain.dof()) {
    q.resize(chain.dof());
    for (int i = 0; i < chain.dof(); ++i) {
      q[i] = 0.5 * (chain.joints()[i].lower + chain.joints()[i].upper);
    }
  }
  std::vector<Eigen::VectorXd> joints;
  joints.reserve(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    try {
      q = kinematics::Ik(chain, path[k].pose, q, params.ik).q;
    } catch (const Error& e) {
      throw Error(e.code(), "waypoint " + std::to_string(k) + ": " + e.what());
    }
    joints.push_back(q);
  }
  return joints;
}

}  // namespace

GeneratedTrajectory GenerateDemo(const demo::Demonstration& source,
                                 const demo::KeypointAnnotation& target_keypoints,
                                 const Pose& t_new, const GenerateParams& params) {
  const int t_grasp = source.t_grasp;
  const int t_s = source.skill_range.begin;
  const int t_e = source.skill_range.end;
  if (!(0 <= t_grasp && t_grasp < t_s && t_s <= t_e && t_e < source.size())) {
    throw Error(ErrorCode::kInvalidArgument, "source stage boundaries are inconsistent");
  }
  const Pose& t_init = source.object_pose;
  const demo::KeypointAnnotation& kp = source.keypoints;

  const EePath grasp = TransferGrasp(PathOf(source, 0, t_grasp), t_init, kp.affording_point,
                                     target_keypoints.affording_point, t_new);
  SkillTransfer skill_params;
  skill_params.source_grasp = source.steps[t_grasp].ee_pose;
  skill_params.target_grasp = grasp.back().pose;
  skill_params.t_init = t_init;
  skill_params.t_new = t_new;
  skill_params.x_fun = kp.function_point;
  skill_params.x_fun_new = target_keypoints.function_point;
  skill_params.mode = params.mode;
  const EePath skill = TransferSkill(PathOf(source, t_s, t_e), skill_params);

  const auto plan = [&](const Pose& from, const Pose& to, double gripper) {
    return PlanTransition(from, to, params.transition_step, params.min_steps, gripper,
                          params.collision_check);
  };

  GeneratedTrajectory out;
  EePath& path = out.path;
  const EePath approach = plan(source.steps.front().ee_pose, grasp.front().pose,
                               grasp.front().gripper);
  path.assign(approach.begin(), approach.end() - 1);
  out.grasp_segment.begin = static_cast<int>(path.size());
  path.insert(path.end(), grasp.begin(), grasp.end());
  out.grasp_segment.end = static_cast<int>(path.size()) - 1;
  out.t_grasp = out.grasp_segment.begin + t_grasp;

  AppendTransition(path, plan(grasp.back().pose, skill.front().pose, grasp.back().gripper), true);
  out.skill_range.begin = static_cast<int>(path.size());
  path.insert(path.end(), skill.begin(), skill.end());
  out.skill_range.end = static_cast<int>(path.size()) - 1;

  if (t_e + 1 < source.size()) {
    const EePath retreat = TransferGrasp(PathOf(source, t_e + 1, source.size() - 1), t_init,
                                         kp.affording_point, target_keypoints.affording_point,
                                         t_new);
    AppendTransition(path, plan(skill.back().pose, retreat.front().pose, skill.back().gripper),
                     true);
    out.retreat_segment.begin = static_cast<int>(path.size());
    path.insert(path.end(), retreat.begin(), retreat.end());
    out.retreat_segment.end = static_cast<int>(path.size()) - 1;
  }

  if (params.chain != nullptr) out.joints = SolveJoints(path, params);
  return out;
}

std::vector<Pose> ObjectPoses(const EePath& path, int t_grasp, const Pose& t_new) {
  std::vector<Pose> poses(path.size(), t_new);
  if (t_grasp < 0 || t_grasp >= static_cast<int>(path.size())) return poses;
  const Pose in_hand = path[t_grasp].pose.Inverse() * t_new;
  Pose current = t_new;
  for (std::size_t t = static_cast<std::size_t>(t_grasp); t < path.size(); ++t) {
    if (!demo::IsClosed(path[t].gripper)) {
      // Released: stays put from here on.
      for (std::size_t r = t; r < path.size(); ++r) poses[r] = current;
      break;
    }
    current = path[t].pose * in_hand;
    poses[t] = current;
  }
  return poses;
}

}  // namespace demoforge::transfer
