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

#include "demoforge/render/rasterizer.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <omp.h>

#include "demoforge/common/binary_io.h"

namespace demoforge::render {
namespace {

struct ScreenVertex {
  double x;
  double y;
  double inv_z;
};

struct ScreenTriangle {
  std::array<ScreenVertex, 3> v;
  int32_t face = -1;
  int16_t instance = -1;
  double min_y = 0.0;
  double max_y = 0.0;
};

// Clips a camera-frame triangle against z >= kNearPlane and writes the
// projected pieces (at most two) to out. Returns the piece count.
int ClipAndProject(const std::array<Eigen::Vector3d, 3>& p, const Intrinsics& k,
                   int32_t face, int16_t instance, ScreenTriangle* out) {
  std::array<Eigen::Vector3d, 4> poly;
  int count = 0;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d& a = p[i];
    const Eigen::Vector3d& b = p[(i + 1) % 3];
    const bool a_in = a.z() >= kNearPlane;
    const bool b_in = b.z() >= kNearPlane;
    if (a_in) poly[count++] = a;
    if (a_in != b_in) {
      const double t = (kNearPlane - a.z()) / (b.z() - a.z());
      poly[count++] = a + t * (b - a);
    }
  }
  if (count < 3) return 0;
  std::array<ScreenVertex, 4> s;
  for (int i = 0; i < count; ++i) {
    const double inv_z = 1.0 / poly[i].z();
    s[i] = {k.fx * poly[i].x() * inv_z + k.cx, k.fy * poly[i].y() * inv_z + k.cy, inv_z};
  }
  for (int i = 1; i + 1 < count; ++i) {
    ScreenTriangle tri;
    tri.v = {s[0], s[i], s[i + 1]};
    tri.face = face;
    tri.instance = instance;
    tri.min_y = std::min({tri.v[0].y, tri.v[1].y, tri.v[2].y});
    tri.max_y = std::max({tri.v[0].y, tri.v[1].y, tri.v[2].y});
    out[i - 1] = tri;
  }
  return count - 2;
}

// Per item, per face slot lists so the triangle order is fixed regardless of
// how the projection work is split.
std::vector<ScreenTriangle> PrepareTriangles(std::span<const SceneItem> items,
                                             const Camera& camera, bool parallel) {
  const geometry::Pose world_to_camera = camera.pose.Inverse();
  std::vector<ScreenTriangle> all;
  for (const SceneItem& item : items) {
    const mesh::TriMesh& mesh = *item.mesh;
    const geometry::Pose to_camera = world_to_camera * item.pose;
    const Eigen::Matrix3d r = to_camera.rotation().Matrix();
    const Eigen::Vector3d t = to_camera.translation();
    const long nv = static_cast<long>(mesh.vertex_count());
    std::vector<Eigen::Vector3d> cam(mesh.vertex_count());
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < nv; ++i) cam[i] = r * mesh.vertex(i) + t;

    const long nf = static_cast<long>(mesh.face_count());
    std::vector<std::array<ScreenTriangle, 2>> per_face(mesh.face_count());
    std::vector<int> counts(mesh.face_count(), 0);
#pragma omp parallel for schedule(static) if (parallel)
    for (long f = 0; f < nf; ++f) {
      const mesh::Face& face = mesh.faces()[f];
      counts[f] = ClipAndProject({cam[face[0]], cam[face[1]], cam[face[2]]}, camera.intrinsics,
                                 static_cast<int32_t>(f), static_cast<int16_t>(item.instance),
                                 per_face[f].data());
    }
    all.reserve(all.size() + mesh.face_count());
    for (long f = 0; f < nf; ++f) {
      for (int i = 0; i < counts[f]; ++i) all.push_back(per_face[f][i]);
    }
  }
  return all;
}

inline double Edge(const ScreenVertex& a, const ScreenVertex& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

void RasterizeBand(const std::vector<ScreenTriangle>& tris, int row_begin, int row_end,
                   DepthImage& image) {
  const int width = image.width;
  for (const ScreenTriangle& tri : tris) {
    if (tri.max_y < row_begin || tri.min_y > row_end - 1) continue;
    const ScreenVertex& v0 = tri.v[0];
    const ScreenVertex& v1 = tri.v[1];
    const ScreenVertex& v2 = tri.v[2];
    const double area = Edge(v0, v1, v2.x, v2.y);
    if (std::abs(area) < 1e-12) continue;
    const double inv_area = 1.0 / area;
    const int x0 = std::max(0, static_cast<int>(std::ceil(std::min({v0.x, v1.x, v2.x}))));
    const int x1 = std::min(width - 1, static_cast<int>(std::floor(std::max({v0.x, v1.x, v2.x}))));
    const int y0 = std::max(row_begin, static_cast<int>(std::ceil(tri.min_y)));
    const int y1 = std::min(row_end - 1, static_cast<int>(std::floor(tri.max_y)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double b0 = Edge(v1, v2, x, y) * inv_area;
        const double b1 = Edge(v2, v0, x, y) * inv_area;
        const double b2 = Edge(v0, v1, x, y) * inv_area;
        if (b0 < 0.0 || b1 < 0.0 || b2 < 0.0) continue;
        const double inv_z = b0 * v0.inv_z + b1 * v1.inv_z + b2 * v2.inv_z;
        if (!(inv_z > 0.0)) continue;
        const double z = 1.0 / inv_z;
        const std::size_t idx = static_cast<std::size_t>(y) * width + x;
        if (z < image.depth[idx]) {
          image.depth[idx] = z;
          image.face[idx] = tri.face;
          image.instance[idx] = tri.instance;
        }
      }
    }
  }
}

}  // namespace

std::size_t DepthImage::foreground_count() const {
  return static_cast<std::size_t>(std::count_if(face.begin(), face.end(),
                                                [](int32_t f) { return f >= 0; }));
}

std::vector<uint8_t> DepthImage::Mask() const {
  std::vector<uint8_t> mask(face.size());
  for (std::size_t i = 0; i < face.size(); ++i) mask[i] = face[i] >= 0 ? 1 : 0;
  return mask;
}

DepthImage RenderScene(std::span<const SceneItem> items, const Camera& camera) {
  ValidateCamera(camera);
  const int width = camera.intrinsics.width;
  const int height = camera.intrinsics.height;
  DepthImage image(width, height);
  const std::vector<ScreenTriangle> tris = PrepareTriangles(items, camera, true);
#pragma omp parallel
  {
    const int threads = omp_get_num_threads();
    const int id = omp_get_thread_num();
    const int rows = (height + threads - 1) / threads;
    const int begin = std::min(height, id * rows);
    const int end = std::min(height, begin + rows);
    if (begin < end) RasterizeBand(tris, begin, end, image);
  }
  return image;
}

DepthImage RenderDepth(const mesh::TriMesh& mesh, const geometry::Pose& pose,
                       const Camera& camera) {
  const SceneItem item{&mesh, pose, 0};
  return RenderScene(std::span<const SceneItem>(&item, 1), camera);
}

namespace serial {

DepthImage RenderScene(std::span<const SceneItem> items, const Camera& camera) {
  ValidateCamera(camera);
  DepthImage image(camera.intrinsics.width, camera.intrinsics.height);
  RasterizeBand(PrepareTriangles(items, camera, false), 0, image.height, image);
  return image;
}

}  // namespace serial

bool Visible(const DepthImage& image, const Camera& camera, const Eigen::Vector3d& x,
             double tolerance) {
  const auto projection = TryProject(camera, x);
  if (!projection) return false;
  const int u = static_cast<int>(std::lround(projection->pixel.x()));
  const int v = static_cast<int>(std::lround(projection->pixel.y()));
  if (!image.in_bounds(u, v) || !image.foreground(u, v)) return false;
  return std::abs(image.at(u, v) - projection->depth) <= tolerance;
}

std::vector<uint8_t> ShadeGray(const DepthImage& image, std::span<const SceneItem> items,
                               const Camera& camera) {
  std::vector<uint8_t> gray(image.depth.size(), 0);
  for (int v = 0; v < image.height; ++v) {
    for (int u = 0; u < image.width; ++u) {
      const std::size_t idx = image.index(u, v);
      if (image.face[idx] < 0) continue;
      const SceneItem* item = nullptr;
      for (const SceneItem& candidate : items) {
        if (candidate.instance == image.instance[idx]) item = &candidate;
      }
      if (item == nullptr) continue;
      const Eigen::Vector3d normal =
          item->pose.rotation().Rotate(item->mesh->face_normal(image.face[idx]));
      const Eigen::Vector3d point = Unproject(camera, Eigen::Vector2d(u, v), image.depth[idx]);
      const Eigen::Vector3d to_camera = (camera.pose.translation() - point).normalized();
      gray[idx] = static_cast<uint8_t>(std::lround(255.0 * std::abs(normal.dot(to_camera))));
    }
  }
  return gray;
}

void WriteDepthPgm(const DepthImage& image, const std::filesystem::path& path) {
  const std::string header =
      "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n65535\n";
  std::vector<uint8_t> bytes(header.begin(), header.end());
  for (const double d : image.depth) {
    const double mm = std::isfinite(d) ? std::clamp(d * 1000.0, 0.0, 65535.0) : 0.0;
    const auto value = static_cast<uint16_t>(std::lround(mm));
    bytes.push_back(static_cast<uint8_t>(value >> 8));  // PGM is big-endian
    bytes.push_back(static_cast<uint8_t>(value & 0xff));
  }
  WriteFileBytes(path, bytes);
}

}  // namespace demoforge::render
