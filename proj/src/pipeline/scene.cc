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

#include "demoforge/pipeline/scene.h"

#include <cmath>

namespace demoforge::pipeline {

std::vector<render::Camera> DefaultSceneCameras(int resolution) {
  const double focal = 0.5 * resolution / std::tan(M_PI / 6.0);
  const render::Intrinsics k = render::SquareIntrinsics(resolution, focal);
  const Eigen::Vector3d target(0.5, 0.0, 0.08);
  return {
      render::LookAt(target + Eigen::Vector3d(-0.1, -0.55, 0.4), target, Eigen::Vector3d::UnitZ(), k),
      render::LookAt(target + Eigen::Vector3d(0.1, 0.55, 0.4), target, Eigen::Vector3d::UnitZ(), k),
  };
}

std::vector<render::Camera> Rescaled(std::span<const render::Camera> cameras, int resolution) {
  std::vector<render::Camera> out;
  for (const render::Camera& c : cameras) {
    render::Camera scaled = c;
    const double sx = static_cast<double>(resolution) / c.intrinsics.width;
    const double sy = static_cast<double>(resolution) / c.intrinsics.height;
    scaled.intrinsics.fx = c.intrinsics.fx * sx;
    scaled.intrinsics.fy = c.intrinsics.fy * sy;
    scaled.intrinsics.cx = (c.intrinsics.cx + 0.5) * sx - 0.5;
    scaled.intrinsics.cy = (c.intrinsics.cy + 0.5) * sy - 0.5;
    scaled.intrinsics.width = resolution;
    scaled.intrinsics.height = resolution;
    out.push_back(scaled);
  }
  return out;
}

pointcloud::SegmentedPointCloud RenderCloud(std::span<const render::SceneItem> items,
                                            std::span<const render::Camera> cameras,
                                            const pointcloud::Workspace* workspace) {
  pointcloud::SegmentedPointCloud cloud;
  for (const render::Camera& camera : cameras) {
    const render::DepthImage image = render::RenderScene(items, camera);
    for (int v = 0; v < image.height; ++v) {
      for (int u = 0; u < image.width; ++u) {
        const std::size_t idx = image.index(u, v);
        if (image.face[idx] < 0) continue;
        const Eigen::Vector3f p =
            render::Unproject(camera, Eigen::Vector2d(u, v), image.depth[idx]).cast<float>();
        if (workspace != nullptr && !workspace->Contains(p)) continue;
        cloud.Append(p, static_cast<pointcloud::Label>(image.instance[idx]));
      }
    }
  }
  return cloud;
}

}  // namespace demoforge::pipeline
