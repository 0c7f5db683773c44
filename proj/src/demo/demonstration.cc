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

#include "demoforge/demo/demonstration.h"

#include <string>

#include "demoforge/common/error.h"

namespace demoforge::demo {

std::vector<double> GripperChannel(const Demonstration& demo) {
  std::vector<double> gripper;
  gripper.reserve(demo.steps.size());
  for (const DemoStep& step : demo.steps) gripper.push_back(step.gripper);
  return gripper;
}

int ExtractGraspTime(std::span<const double> gripper) {
  int run = 0;
  for (std::size_t t = 0; t < gripper.size(); ++t) {
    run = IsClosed(gripper[t]) ? run + 1 : 0;
    if (run == kGraspPersistence) return static_cast<int>(t) - kGraspPersistence + 1;
  }
  throw Error(ErrorCode::kNoGraspFound, "gripper never stays closed for " +
                                            std::to_string(kGraspPersistence) + " steps");
}

Stage StageOf(int t, int t_grasp, const StepRange& skill_range) {
  if (t >= 0 && t <= t_grasp) return Stage::kGrasp;
  if (skill_range.Contains(t)) return Stage::kSkill;
  return Stage::kTransition;
}

void Validate(const Demonstration& demo) {
  const auto fail = [](const std::string& message) {
    throw Error(ErrorCode::kInvalidArgument, message);
  };
  const int t_s = demo.skill_range.begin;
  const int t_e = demo.skill_range.end;
  if (!(0 <= demo.t_grasp && demo.t_grasp < t_s && t_s <= t_e && t_e < demo.size())) {
    fail("stage boundaries violate 0 <= t_grasp < t_s <= t_e < steps (t_grasp=" +
         std::to_string(demo.t_grasp) + ", skill=[" + std::to_string(t_s) + ", " +
         std::to_string(t_e) + "], steps=" + std::to_string(demo.size()) + ")");
  }
  const std::vector<double> gripper = GripperChannel(demo);
  if (ExtractGraspTime(gripper) != demo.t_grasp) fail("t_grasp is not the first persistent closure");
  for (int t = demo.t_grasp; t <= t_e; ++t) {
    if (!IsClosed(gripper[t])) fail("gripper opens at step " + std::to_string(t));
  }
  std::size_t cloud_size = 0;
  for (const DemoStep& step : demo.steps) {
    if (step.cloud.empty()) continue;
    if (cloud_size == 0) cloud_size = step.cloud.size();
    if (step.cloud.size() != cloud_size) fail("cloud sizes differ between steps");
  }
}

}  // namespace demoforge::demo
