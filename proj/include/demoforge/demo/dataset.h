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

#ifndef DEMOFORGE_DEMO_DATASET_H_
#define DEMOFORGE_DEMO_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "demoforge/demo/demonstration.h"

namespace demoforge::demo {

// On-disk layout of a dataset directory:
//   manifest.json
//   demo_<k>/traj.bin    float64 LE, steps x 8: pose [w,x,y,z,tx,ty,tz], gripper
//   demo_<k>/clouds.bin  float32 LE, steps x N x 4: x, y, z, label
//   demo_<k>/joints.bin  float64 LE, steps x dof (only with a kinematic chain)
constexpr int kSchemaVersion = 1;
constexpr std::size_t kDefaultCloudSize = 1024;

struct ManifestEntry {
  std::string dir;
  int steps = 0;
  std::string mesh_id;
  geometry::Pose pose;  // object pose T'
  uint64_t seed = 0;
  int t_grasp = 0;
  StepRange skill_range;
  KeypointAnnotation keypoints;
  int joint_count = 0;
  int mesh_index = -1;
  int pose_index = -1;
};

struct Manifest {
  int schema_version = kSchemaVersion;
  std::size_t cloud_size = kDefaultCloudSize;
  std::vector<ManifestEntry> demos;
};

nlohmann::json ManifestToJson(const Manifest& manifest);
Manifest ManifestFromJson(const nlohmann::json& doc);

ManifestEntry EntryFor(const Demonstration& demo, const std::string& dir);

// Writes traj.bin, clouds.bin and (with joints) joints.bin into dir, creating
// it. Throws kInvalidArgument when a step's cloud size differs from
// cloud_size, kIoError on write failure.
void WriteDemoFiles(const Demonstration& demo, std::size_t cloud_size,
                    const std::filesystem::path& dir);

// Writes manifest.json through a temporary file and a rename.
void WriteManifest(const Manifest& manifest, const std::filesystem::path& dir);

// Writes every demo (in parallel) as demo_<k> and then the manifest. The
// cloud size is taken from the demos; `cloud_size` is used for an empty list.
// Throws kInvalidArgument for mixed cloud sizes.
Manifest WriteDataset(std::span<const Demonstration> demos, const std::filesystem::path& dir,
                      std::size_t cloud_size = kDefaultCloudSize);

// Throw kIoError / kParseError.
Manifest ReadManifest(const std::filesystem::path& dir);
Demonstration ReadDemo(const std::filesystem::path& dir, const Manifest& manifest,
                       std::size_t index);
// One frame of clouds.bin; throws kIndexOutOfRange.
pointcloud::SegmentedPointCloud ReadFrame(const std::filesystem::path& dir,
                                          const Manifest& manifest, std::size_t index,
                                          int frame);

}  // namespace demoforge::demo

#endif  // DEMOFORGE_DEMO_DATASET_H_
