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

#include "demoforge/pointcloud/assemble.h"

#include <string>

#include "demoforge/common/error.h"
#include "demoforge/common/random.h"
#include "demoforge/pointcloud/sampling.h"

namespace demoforge::pointcloud {
namespace {

void CheckInput(const AssembleInput& input) {
  const int source_steps = static_cast<int>(input.real_goal_frames.size());
  const int generated_steps = static_cast<int>(input.sim_frames.size());
  if (input.cloud_size < 1) throw Error(ErrorCode::kInvalidArgument, "cloud size must be >= 1");
  if (input.source_skill.begin < 0 || input.source_skill.end >= source_steps ||
      input.source_skill.begin > input.source_skill.end) {
    throw Error(ErrorCode::kIndexOutOfRange, "source skill range outside the source demo");
  }
  if (input.generated_skill.begin < 0 || input.generated_skill.end >= generated_steps ||
      input.generated_skill.begin > input.generated_skill.end) {
    throw Error(ErrorCode::kIndexOutOfRange, "generated skill range outside the trajectory");
  }
  const int shift = input.source_skill.begin - input.generated_skill.begin;
  if (input.generated_skill.begin + shift < 0 || input.generated_skill.end + shift >= source_steps) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "skill replay index " + std::to_string(input.generated_skill.end + shift) +
                    " outside a source demo of " + std::to_string(source_steps) + " steps");
  }
  if (source_steps == input.source_skill.length()) {
    throw Error(ErrorCode::kIndexOutOfRange, "source demo has no steps outside the skill");
  }
}

}  // namespace

int GoalSourceIndex(const AssembleInput& input, int t) {
  if (input.generated_skill.Contains(t)) {
    const int i = t - input.generated_skill.begin + input.source_skill.begin;
    if (i < 0 || i >= static_cast<int>(input.real_goal_frames.size())) {
      throw Error(ErrorCode::kIndexOutOfRange, "skill replay index " + std::to_string(i));
    }
    return i;
  }
  const std::size_t candidates = input.real_goal_frames.size() - input.source_skill.length();
  Rng rng(HashCombine(input.seed, static_cast<uint64_t>(t)));
  const int k = static_cast<int>(rng.Index(candidates));
  return k < input.source_skill.begin ? k : k + input.source_skill.length();
}

SegmentedPointCloud ResizeCloud(const SegmentedPointCloud& cloud, std::size_t n) {
  if (cloud.empty()) throw Error(ErrorCode::kEmptyResult, "cannot resize an empty cloud");
  if (cloud.size() >= n) return FarthestPointSample(cloud, n);
  SegmentedPointCloud out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.Append(cloud.points[i % cloud.size()], cloud.labels[i % cloud.size()]);
  }
  return out;
}

SegmentedPointCloud AssembleFrame(const AssembleInput& input, int t) {
  const int source = GoalSourceIndex(input, t);
  SegmentedPointCloud frame;
  const SegmentedPointCloud& goal = input.real_goal_frames[source];
  const SegmentedPointCloud& sim = input.sim_frames[t];
  frame.reserve(goal.size() + sim.size());
  frame.Append(goal);
  frame.Append(sim);
  if (frame.empty()) {
    throw Error(ErrorCode::kEmptyResult, "frame " + std::to_string(t) + " has no points");
  }
  return ResizeCloud(frame, input.cloud_size);
}

std::vector<SegmentedPointCloud> Assemble(const AssembleInput& input) {
  CheckInput(input);
  const long steps = static_cast<long>(input.sim_frames.size());
  for (long t = 0; t < steps; ++t) {
    const int source = GoalSourceIndex(input, static_cast<int>(t));
    if (input.real_goal_frames[source].empty() && input.sim_frames[t].empty()) {
      throw Error(ErrorCode::kEmptyResult, "frame " + std::to_string(t) + " has no points");
    }
  }
  std::vector<SegmentedPointCloud> frames(input.sim_frames.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long t = 0; t < steps; ++t) frames[t] = AssembleFrame(input, static_cast<int>(t));
  return frames;
}

}  // namespace demoforge::pointcloud
