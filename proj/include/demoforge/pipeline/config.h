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

#ifndef DEMOFORGE_PIPELINE_CONFIG_H_
#define DEMOFORGE_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "demoforge/correspondence/keypoint_transfer.h"
#include "demoforge/pointcloud/point_cloud.h"
#include "demoforge/transfer/pose_sampler.h"
#include "demoforge/transfer/segments.h"

namespace demoforge::pipeline {

enum class BackendType { kGeometric, kFiles, kService };

struct BackendConfig {
  BackendType type = BackendType::kGeometric;
  std::filesystem::path dir;  // files
  std::string url;            // service
};

struct RobotLinkConfig {
  std::filesystem::path mesh;
  int frame = -1;  // -1: end effector
};

// Paths are resolved against the directory of the config file.
struct RunConfig {
  // Source demonstration.
  std::filesystem::path source_dataset;
  int source_demo_index = 0;
  std::filesystem::path source_annotations;
  std::filesystem::path source_mesh;

  std::vector<std::filesystem::path> meshes;  // sorted by file name
  std::optional<std::filesystem::path> overrides;
  std::filesystem::path keypoint_dir;

  int split_meshes = 1;
  int demos_per_mesh = 1;
  transfer::PoseSampler sampler;
  transfer::SkillMode mode = transfer::SkillMode::kGoalAnchored;
  double transition_step = 0.01;
  int transition_min_steps = 5;

  uint64_t seed = 0;
  std::filesystem::path output;
  int jobs = 1;
  std::size_t cloud_size = 1024;
  double dbscan_eps = 0.01;
  std::size_t dbscan_min_pts = 10;
  pointcloud::Workspace workspace{{0.1, -0.5, 0.005}, {0.9, 0.5, 0.6}};
  correspondence::RigParams rig;
  BackendConfig backend;

  std::optional<std::filesystem::path> scene_cameras;
  int scene_resolution = 128;
  std::optional<std::filesystem::path> chain;
  std::vector<RobotLinkConfig> robot_links;
  std::optional<double> collision_floor_z;
};

// Parses and validates. Throws Error(kConfigError) for malformed values,
// N < 64, jobs < 1, or referenced paths that do not exist (the output and
// keypoint directories may be missing).
RunConfig RunConfigFromJson(const nlohmann::json& doc, const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);
void Validate(const RunConfig& config);

}  // namespace demoforge::pipeline

#endif  // DEMOFORGE_PIPELINE_CONFIG_H_
