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

#include "demoforge/correspondence/keypoint_transfer.h"

#include <optional>
#include <string>

#include "demoforge/common/error.h"
#include "demoforge/demo/annotations.h"
#include "demoforge/mesh/queries.h"

namespace demoforge::correspondence {

void Validate(const RigParams& p) {
  if (p.views < 1 || p.resolution < 1 || !(p.focal > 0.0) || !(p.radius_factor > 0.0) ||
      p.neighbors < 1 || !(p.visibility_pixels > 0.0)) {
    throw Error(ErrorCode::kConfigError, "rig parameters must be positive");
  }
}

double RigRadius(const mesh::TriMesh& mesh, const RigParams& params) {
  return params.radius_factor * mesh.bounding_radius();
}

double PixelFootprint(const mesh::TriMesh& mesh, const RigParams& params) {
  return RigRadius(mesh, params) / params.focal;
}

std::vector<render::Camera> MeshRig(const mesh::TriMesh& mesh, const RigParams& params) {
  render::RingRigParams rig;
  rig.views = params.views;
  rig.radius = RigRadius(mesh, params);
  rig.elevation = params.elevation;
  rig.intrinsics = render::SquareIntrinsics(params.resolution, params.focal);
  return render::RingRig(rig);
}

MeshViews PrepareViews(const mesh::TriMesh& mesh, DescriptorBackend& backend,
                       const RigParams& params, std::mutex* backend_mutex) {
  Validate(params);
  MeshViews views;
  views.mesh = &mesh;
  const std::vector<render::Camera> cameras = MeshRig(mesh, params);
  for (int i = 0; i < static_cast<int>(cameras.size()); ++i) {
    ViewRender view;
    view.mesh = &mesh;
    view.camera = cameras[i];
    view.depth = render::RenderDepth(mesh, geometry::Pose::Identity(), cameras[i]);
    view.view_index = i;
    DescriptorMap map;
    if (backend_mutex != nullptr && !backend.thread_safe()) {
      std::lock_guard<std::mutex> lock(*backend_mutex);
      map = backend.Describe(view);
    } else {
      map = backend.Describe(view);
    }
    views.masks.push_back(view.depth.Mask());
    views.renders.push_back(std::move(view));
    views.maps.push_back(std::move(map));
  }
  return views;
}

MatchResult TransferKeypoint(const MeshViews& source, const Eigen::Vector3d& x,
                             const MeshViews& target, const RigParams& params) {
  const mesh::TriMesh& src = *source.mesh;
  const double off_surface = mesh::SurfaceDistance(src, x);
  if (off_surface > demo::kMaxKeypointSurfaceDistance) {
    throw Error(ErrorCode::kKeypointOffSurface,
                "keypoint is " + std::to_string(off_surface) + " m from " + src.id());
  }
  const std::vector<Eigen::Vector3d> neighbors =
      mesh::NearestRefinedPoints(src, x, params.neighbors, PixelFootprint(src, params));

  MatchResult result;
  Eigen::Vector3d weighted_sum = Eigen::Vector3d::Zero();
  double weight_sum = 0.0;
  bool any_candidate = false;
  const int views = static_cast<int>(std::min(source.renders.size(), target.renders.size()));
  for (int i = 0; i < views; ++i) {
    ViewStats stats;
    stats.view = i;
    const ViewRender& src_view = source.renders[i];
    const ViewRender& tgt_view = target.renders[i];
    std::optional<MatchTarget> match_target;
    try {
      match_target.emplace(target.maps[i], target.masks[i]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyMask) throw;
      result.views.push_back(stats);
      continue;
    }
    double view_weight = 0.0;
    for (const Eigen::Vector3d& n : neighbors) {
      const std::optional<render::Projection> projection = render::TryProject(src_view.camera, n);
      if (!projection) continue;
      const double tolerance =
          params.visibility_pixels * projection->depth / src_view.camera.intrinsics.fx;
      if (!render::Visible(src_view.depth, src_view.camera, n, tolerance)) continue;
      ++stats.visible_neighbors;
      any_candidate = true;
      const PixelMatch match =
          MatchPixel(source.maps[i], source.masks[i], projection->pixel, *match_target);
      const double weight = std::max(match.weight, 0.0);
      if (weight < params.min_weight || !(weight > 0.0)) continue;
      Candidate c;
      c.view = i;
      c.source_point = n;
      c.source_pixel = projection->pixel;
      c.target_pixel = match.pixel;
      c.weight = weight;
      c.target_point = render::Unproject(tgt_view.camera, match.pixel.cast<double>(),
                                         tgt_view.depth.at(match.pixel.x(), match.pixel.y()));
      weighted_sum += weight * c.target_point;
      weight_sum += weight;
      view_weight += weight;
      ++stats.accepted;
      result.candidates.push_back(c);
    }
    if (stats.accepted > 0) stats.mean_weight = view_weight / stats.accepted;
    result.views.push_back(stats);
  }
  if (!any_candidate) {
    throw Error(ErrorCode::kNoVisibleNeighbors,
                "no neighbor of the keypoint is visible with a non-empty target view");
  }
  if (!(weight_sum > 0.0)) throw Error(ErrorCode::kZeroWeight, "all match weights are zero");
  result.keypoint = weighted_sum / weight_sum;
  result.confidence = weight_sum / static_cast<double>(result.candidates.size());
  return result;
}

MatchResult TransferKeypoint(const mesh::TriMesh& source, const Eigen::Vector3d& x,
                             const mesh::TriMesh& target, DescriptorBackend& backend,
                             const RigParams& params) {
  const MeshViews src = PrepareViews(source, backend, params);
  const MeshViews tgt = PrepareViews(target, backend, params);
  return TransferKeypoint(src, x, tgt, params);
}

nlohmann::json ResultToJson(const MatchResult& result, const std::string& mesh_id,
                            const std::string& backend_name) {
  nlohmann::json views = nlohmann::json::array();
  for (const ViewStats& s : result.views) {
    views.push_back({{"view", s.view},
                     {"visible_neighbors", s.visible_neighbors},
                     {"accepted", s.accepted},
                     {"mean_weight", s.mean_weight}});
  }
  const Eigen::Vector3d& k = result.keypoint;
  return {{"mesh_id", mesh_id},
          {"keypoint", {k.x(), k.y(), k.z()}},
          {"confidence", result.confidence},
          {"backend", backend_name},
          {"candidates", result.candidates.size()},
          {"views", views}};
}

MatchResult ResultFromJson(const nlohmann::json& doc) {
  MatchResult result;
  try {
    const auto k = doc.at("keypoint").get<std::vector<double>>();
    if (k.size() != 3) throw Error(ErrorCode::kParseError, "keypoint needs 3 values");
    result.keypoint = Eigen::Vector3d(k[0], k[1], k[2]);
    result.confidence = doc.at("confidence").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("keypoint result: ") + e.what());
  }
  return result;
}

std::filesystem::path ResultPath(const std::filesystem::path& dir, const std::string& mesh_id,
                                 KeypointKind kind) {
  return dir / (mesh_id + (kind == KeypointKind::kAffording ? "_affording.json" : "_function.json"));
}

}  // namespace demoforge::correspondence
