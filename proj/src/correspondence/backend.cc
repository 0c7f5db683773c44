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

#include "demoforge/correspondence/backend.h"

#include <string>

#include "demoforge/common/error.h"

namespace demoforge::correspondence {

DescriptorMap GeometricBackend::Describe(const ViewRender& view) {
  const render::DepthImage& depth = view.depth;
  DescriptorMap map(depth.height, depth.width, kDim);
  map.camera = view.camera;
  const double inv_radius = 1.0 / view.mesh->bounding_radius();
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      const std::size_t idx = depth.index(u, v);
      if (depth.face[idx] < 0) continue;
      const Eigen::Vector3d point =
          render::Unproject(view.camera, Eigen::Vector2d(u, v), depth.depth[idx]) * inv_radius;
      float* d = map.at(u, v);
      for (int k = 0; k < 3; ++k) d[k] = static_cast<float>(point[k]);
      d[3] = 1.0f;
    }
  }
  return map;
}

std::filesystem::path FileBackend::MapPath(const std::filesystem::path& dir,
                                           const std::string& mesh_id, int view_index) {
  return dir / mesh_id / ("view_" + std::to_string(view_index) + ".dmap");
}

DescriptorMap FileBackend::Describe(const ViewRender& view) {
  const std::filesystem::path path = MapPath(dir_, view.mesh->id(), view.view_index);
  DescriptorMap map;
  try {
    map = ReadDmap(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kBackendError, e.what());
  }
  if (map.height != view.depth.height || map.width != view.depth.width) {
    throw Error(ErrorCode::kBackendError,
                path.string() + " is " + std::to_string(map.height) + "x" +
                    std::to_string(map.width) + ", render is " + std::to_string(view.depth.height) +
                    "x" + std::to_string(view.depth.width));
  }
  map.camera = view.camera;
  return map;
}

}  // namespace demoforge::correspondence
