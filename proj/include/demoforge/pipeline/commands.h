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

#ifndef DEMOFORGE_PIPELINE_COMMANDS_H_
#define DEMOFORGE_PIPELINE_COMMANDS_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "demoforge/correspondence/backend.h"
#include "demoforge/demo/dataset.h"
#include "demoforge/pipeline/config.h"
#include "demoforge/pipeline/robot_model.h"
#include "demoforge/render/camera.h"

namespace demoforge::pipeline {

struct MeshFailure {
  std::string mesh_id;
  std::string error;  // ErrorCodeName or "Error"
  std::string message;
};

struct CanonicalizeReport {
  std::vector<std::string> written;
  std::vector<std::string> overrides_applied;
  std::vector<MeshFailure> failures;
  std::vector<std::string> warnings;
};

// Canonical OBJ per mesh in out_dir plus canonicalize_report.json. Meshes
// that fail are reported and skipped.
CanonicalizeReport CmdCanonicalize(const RunConfig& config, const std::filesystem::path& out_dir);
nlohmann::json ReportToJson(const CanonicalizeReport& report);

struct CorrespondReport {
  std::string backend;
  std::vector<std::string> succeeded;
  std::vector<MeshFailure> failures;
};

std::unique_ptr<correspondence::DescriptorBackend> MakeBackend(const RunConfig& config);

// Transfers the annotated affording and function points onto every mesh
// and writes the two result files per mesh into out_dir, plus
// correspond_report.json. Per-mesh failures are recorded.
CorrespondReport CmdCorrespond(const RunConfig& config, const std::filesystem::path& out_dir);
nlohmann::json ReportToJson(const CorrespondReport& report);

// Read-only inputs shared by every generation task.
struct GenerationAssets {
  demo::Demonstration source;  // annotation applied, validated
  std::string source_mesh_id;
  std::vector<pointcloud::SegmentedPointCloud> goal_frames;  // per source step
  std::vector<mesh::TriMesh> meshes;                          // canonical, split order
  // Per mesh: keypoints, or the reason they are unavailable.
  std::vector<std::optional<demo::KeypointAnnotation>> keypoints;
  std::vector<std::string> keypoint_errors;
  RobotModel robot;
  std::vector<render::Camera> cameras;
};

// Loads the source demo, annotation, meshes, keypoint results, robot and
// cameras. The source mesh uses its annotated keypoints directly. Throws
// kConfigError when the split asks for more meshes than configured.
GenerationAssets BuildAssets(const RunConfig& config);

// One (mesh, pose) task. Without rendering the steps carry no clouds.
demo::Demonstration GenerateTask(const GenerationAssets& assets, const RunConfig& config,
                                 int mesh_index, int pose_index, bool render_clouds = true);

struct TaskFailure {
  int task = 0;
  std::string mesh_id;
  int pose_index = 0;
  std::string error;
  std::string message;
};

struct GenerateReport {
  demo::Manifest manifest;
  int tasks = 0;
  std::vector<TaskFailure> failures;
  double seconds = 0.0;
};

// Generates split_meshes x demos_per_mesh demos into config.output. Every
// task renders into its own temporary directory; finished demos are then
// renamed to demo_<k> in task order and the manifest and summary.json are
// written. Throws only for configuration and shared-asset errors.
GenerateReport CmdGenerate(const RunConfig& config);
nlohmann::json SummaryToJson(const GenerateReport& report);

struct InspectResult {
  std::filesystem::path ply;
  std::string summary;
  std::array<std::size_t, pointcloud::kLabelCount> histogram{};
};

// Writes the frame cloud as PLY into out_dir and returns a text summary.
// Throws kIndexOutOfRange for a bad demo or frame index.
InspectResult CmdInspect(const std::filesystem::path& dataset, int demo_index, int frame,
                         const std::filesystem::path& out_dir);

}  // namespace demoforge::pipeline

#endif  // DEMOFORGE_PIPELINE_COMMANDS_H_
