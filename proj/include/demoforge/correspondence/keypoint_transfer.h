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

#ifndef DEMOFORGE_CORRESPONDENCE_KEYPOINT_TRANSFER_H_
#define DEMOFORGE_CORRESPONDENCE_KEYPOINT_TRANSFER_H_

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

#include "demoforge/correspondence/backend.h"
#include "demoforge/correspondence/descriptor_map.h"
#include "demoforge/correspondence/match.h"
#include "demoforge/mesh/tri_mesh.h"
#include "demoforge/render/camera.h"
#include "demoforge/render/rasterizer.h"

namespace demoforge::correspondence {

struct RigParams {
  int views = 8;
  double elevation = M_PI / 4.0;  // radians
  double radius_factor = 2.5;     // camera distance / mesh bounding radius
  int resolution = 256;
  double focal = 256.0;  // pixels
  int neighbors = 8;     // m nearest refined-mesh vertices per keypoint
  double min_weight = 0.0;
  // Depth tolerance of the visibility test, in pixel footprints at the
  // vertex depth.
  double visibility_pixels = 3.0;
};

// Throws kConfigError for non-positive counts or sizes.
void Validate(const RigParams& params);

// Distance from the rig cameras to the mesh origin.
double RigRadius(const mesh::TriMesh& mesh, const RigParams& params);
// Meters covered by one pixel at the rig radius.
double PixelFootprint(const mesh::TriMesh& mesh, const RigParams& params);
std::vector<render::Camera> MeshRig(const mesh::TriMesh& mesh, const RigParams& params);

// Canonical-pose renders and descriptor maps of one mesh over the rig.
struct MeshViews {
  const mesh::TriMesh* mesh = nullptr;
  std::vector<ViewRender> renders;
  std::vector<DescriptorMap> maps;
  std::vector<std::vector<uint8_t>> masks;
};

// Serializes Describe calls when the backend is not thread safe.
MeshViews PrepareViews(const mesh::TriMesh& mesh, DescriptorBackend& backend,
                       const RigParams& params, std::mutex* backend_mutex = nullptr);

struct Candidate {
  int view = 0;
  Eigen::Vector3d source_point = Eigen::Vector3d::Zero();
  Eigen::Vector2d source_pixel = Eigen::Vector2d::Zero();
  Eigen::Vector2i target_pixel = Eigen::Vector2i::Zero();
  double weight = 0.0;  // after clamping at zero
  Eigen::Vector3d target_point = Eigen::Vector3d::Zero();
};

struct ViewStats {
  int view = 0;
  int visible_neighbors = 0;
  int accepted = 0;
  double mean_weight = 0.0;  // over accepted candidates
};

struct MatchResult {
  Eigen::Vector3d keypoint = Eigen::Vector3d::Zero();  // target canonical frame
  double confidence = 0.0;  // mean accepted weight
  std::vector<Candidate> candidates;  // accepted only
  std::vector<ViewStats> views;
};

// Neighbors are the m vertices nearest to x on the source mesh refined to
// one pixel footprint per edge (see mesh::NearestRefinedPoints). For every
// view and each neighbor visible in that view: project the vertex, match its descriptor against the target
// foreground, and unproject the match at the target depth. Weights are
// clamped at zero; candidates below min_weight are dropped. The result is the
// weighted mean of the target points. Views whose target render is empty are
// skipped.
//
// Throws kKeypointOffSurface when x is more than 2 cm from the source
// surface, kNoVisibleNeighbors when no candidate remains and kZeroWeight when
// every accepted weight is zero.
MatchResult TransferKeypoint(const MeshViews& source, const Eigen::Vector3d& x,
                             const MeshViews& target, const RigParams& params);

MatchResult TransferKeypoint(const mesh::TriMesh& source, const Eigen::Vector3d& x,
                             const mesh::TriMesh& target, DescriptorBackend& backend,
                             const RigParams& params);

// Result file: {"mesh_id", "keypoint": [3], "confidence", "backend",
// "candidates", "views": [{"view", "visible_neighbors", "accepted",
// "mean_weight"}]}.
nlohmann::json ResultToJson(const MatchResult& result, const std::string& mesh_id,
                            const std::string& backend_name);
// Returns the keypoint and confidence; throws kParseError.
MatchResult ResultFromJson(const nlohmann::json& doc);

enum class KeypointKind { kAffording, kFunction };
std::filesystem::path ResultPath(const std::filesystem::path& dir, const std::string& mesh_id,
                                 KeypointKind kind);

}  // namespace demoforge::correspondence

#endif  // DEMOFORGE_CORRESPONDENCE_KEYPOINT_TRANSFER_H_
