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

#ifndef DEMOFORGE_PIPELINE_ASSETS_H_
#define DEMOFORGE_PIPELINE_ASSETS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "demoforge/geometry/pose.h"
#include "demoforge/mesh/tri_mesh.h"
#include "demoforge/pointcloud/point_cloud.h"

namespace demoforge::pipeline {

using PoseOverrides = std::map<std::string, geometry::Pose>;

PoseOverrides LoadOverrides(const std::optional<std::filesystem::path>& path);

// Loads a mesh and brings it into its canonical frame: the override pose when
// one is listed for the mesh id, PCA otherwise.
mesh::TriMesh LoadCanonicalMesh(const std::filesystem::path& path, const PoseOverrides& overrides,
                                std::vector<std::string>* warnings = nullptr);

// Height that puts the lowest vertex of the rotated mesh on z = 0.
double RestingHeight(const mesh::TriMesh& mesh, const geometry::Quat& rotation);

struct GoalFrameParams {
  pointcloud::Workspace workspace;
  double dbscan_eps = 0.01;
  std::size_t dbscan_min_pts = 10;
};

// Goal-object points of one source frame: workspace crop, goal label, and
// the largest DBSCAN cluster. Empty when nothing survives.
pointcloud::SegmentedPointCloud GoalPoints(const pointcloud::SegmentedPointCloud& frame,
                                           const GoalFrameParams& params);

}  // namespace demoforge::pipeline

#endif  // DEMOFORGE_PIPELINE_ASSETS_H_
