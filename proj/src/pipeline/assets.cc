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

#include "demoforge/pipeline/assets.h"

#include <algorithm>
#include <limits>

#include "demoforge/common/error.h"
#include "demoforge/mesh/canonicalize.h"
#include "demoforge/mesh/mesh_io.h"
#include "demoforge/pointcloud/sampling.h"

namespace demoforge::pipeline {

PoseOverrides LoadOverrides(const std::optional<std::filesystem::path>& path) {
  if (!path) return {};
  return mesh::LoadPoseOverrides(*path);
}

mesh::TriMesh LoadCanonicalMesh(const std::filesystem::path& path, const PoseOverrides& overrides,
                                std::vector<std::string>* warnings) {
  const mesh::TriMesh raw = mesh::LoadMesh(path);
  const auto it = overrides.find(raw.id());
  if (it != overrides.end()) return mesh::ApplyCanonicalPose(raw, it->second);
  return mesh::CanonicalizePca(raw, warnings);
}

double RestingHeight(const mesh::TriMesh& mesh, const geometry::Quat& rotation) {
  double min_z = std::numeric_limits<double>::infinity();
  for (const Eigen::Vector3d& v : mesh.vertices()) min_z = std::min(min_z, rotation.Rotate(v).z());
  return -min_z;
}

pointcloud::SegmentedPointCloud GoalPoints(const pointcloud::SegmentedPointCloud& frame,
                                           const GoalFrameParams& params) {
  pointcloud::SegmentedPointCloud goal;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    if (frame.labels[i] == pointcloud::Label::kGoal && params.workspace.Contains(frame.points[i])) {
      goal.Append(frame.points[i], pointcloud::Label::kGoal);
    }
  }
  if (goal.empty()) return goal;
  try {
    return pointcloud::DbscanFilter(goal, params.dbscan_eps, params.dbscan_min_pts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyResult) throw;
    return {};
  }
}

}  // namespace demoforge::pipeline
