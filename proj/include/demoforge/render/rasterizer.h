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

#ifndef DEMOFORGE_RENDER_RASTERIZER_H_
#define DEMOFORGE_RENDER_RASTERIZER_H_

#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "demoforge/geometry/pose.h"
#include "demoforge/mesh/tri_mesh.h"
#include "demoforge/render/camera.h"

namespace demoforge::render {

// Depth along the camera z axis per pixel, +inf where nothing was drawn.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<double> depth;
  std::vector<int32_t> face;      // -1 on background
  std::vector<int16_t> instance;  // SceneItem::instance, -1 on background

  DepthImage() = default;
  DepthImage(int w, int h)
      : width(w),
        height(h),
        depth(static_cast<std::size_t>(w) * h, std::numeric_limits<double>::infinity()),
        face(static_cast<std::size_t>(w) * h, -1),
        instance(static_cast<std::size_t>(w) * h, -1) {}

  std::size_t index(int u, int v) const { return static_cast<std::size_t>(v) * width + u; }
  double at(int u, int v) const { return depth[index(u, v)]; }
  bool foreground(int u, int v) const { return face[index(u, v)] >= 0; }
  bool in_bounds(int u, int v) const { return u >= 0 && v >= 0 && u < width && v < height; }
  std::size_t foreground_count() const;
  // 1 on foreground pixels, row-major.
  std::vector<uint8_t> Mask() const;
};

struct SceneItem {
  const mesh::TriMesh* mesh = nullptr;
  geometry::Pose pose;  // mesh local -> world
  int instance = 0;
};

// Triangles are clipped against this camera-frame plane.
constexpr double kNearPlane = 1e-3;

// Z-buffer rasterization sampled at pixel centers, perspective-correct depth,
// no face culling. Earlier triangles win exact depth ties. Rows are split
// into bands across OpenMP threads; output is identical to serial::.
DepthImage RenderScene(std::span<const SceneItem> items, const Camera& camera);
DepthImage RenderDepth(const mesh::TriMesh& mesh, const geometry::Pose& pose,
                       const Camera& camera);

namespace serial {
DepthImage RenderScene(std::span<const SceneItem> items, const Camera& camera);
}  // namespace serial

// True iff x projects inside the image and the rendered depth at the nearest
// pixel center is within `tolerance` of x's camera-frame depth.
bool Visible(const DepthImage& image, const Camera& camera, const Eigen::Vector3d& x,
             double tolerance);

// Flat Lambertian shading with the light at the camera: |n . view| in [0, 255].
// Background is 0.
std::vector<uint8_t> ShadeGray(const DepthImage& image, std::span<const SceneItem> items,
                               const Camera& camera);

// 16-bit binary PGM, depth in millimeters, background 0.
void WriteDepthPgm(const DepthImage& image, const std::filesystem::path& path);

}  // namespace demoforge::render

#endif  // DEMOFORGE_RENDER_RASTERIZER_H_
