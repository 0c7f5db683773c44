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

#ifndef DEMOFORGE_POINTCLOUD_ASSEMBLE_H_
#define DEMOFORGE_POINTCLOUD_ASSEMBLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "demoforge/pointcloud/point_cloud.h"

namespace demoforge::pointcloud {

// Inclusive step range [begin, end].
struct StepRange {
  int begin = 0;
  int end = 0;

  bool Contains(int t) const { return t >= begin && t <= end; }
  int length() const { return end - begin + 1; }
};

struct AssembleInput {
  // Goal-object points of every source step (labels kGoal).
  std::span<const SegmentedPointCloud> real_goal_frames;
  // Simulated robot + object points of every generated step.
  std::span<const SegmentedPointCloud> sim_frames;
  StepRange source_skill;
  StepRange generated_skill;
  std::size_t cloud_size = 1024;
  uint64_t seed = 0;
};

// Source step whose goal points are replayed at generated step t: inside the
// generated skill range t - t_s' + t_s, otherwise a uniformly drawn source
// step outside the source skill range (drawn from Rng(HashCombine(seed, t))).
int GoalSourceIndex(const AssembleInput& input, int t);

// One output frame: goal points of the chosen source step followed by the
// simulated points, reduced to cloud_size points by farthest point sampling.
// A frame with fewer points is padded by repeating points cyclically.
SegmentedPointCloud AssembleFrame(const AssembleInput& input, int t);

// All generated frames, in parallel across frames. Throws kIndexOutOfRange
// when a replayed index leaves the source demo, kEmptyResult for a frame
// without points.
std::vector<SegmentedPointCloud> Assemble(const AssembleInput& input);

// Takes exactly n points: farthest point sampling when the cloud is larger,
// cyclic repetition when smaller.
SegmentedPointCloud ResizeCloud(const SegmentedPointCloud& cloud, std::size_t n);

}  // namespace demoforge::pointcloud

#endif  // DEMOFORGE_POINTCLOUD_ASSEMBLE_H_
