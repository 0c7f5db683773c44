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

#ifndef DEMOFORGE_CORRESPONDENCE_BACKEND_H_
#define DEMOFORGE_CORRESPONDENCE_BACKEND_H_

#include <filesystem>
#include <string>

#include "demoforge/correspondence/descriptor_map.h"
#include "demoforge/mesh/tri_mesh.h"
#include "demoforge/render/camera.h"
#include "demoforge/render/rasterizer.h"

namespace demoforge::correspondence {

// A canonical-pose render handed to a backend.
struct ViewRender {
  const mesh::TriMesh* mesh = nullptr;
  render::Camera camera;
  render::DepthImage depth;
  int view_index = 0;
};

class DescriptorBackend {
 public:
  virtual ~DescriptorBackend() = default;

  // Must be deterministic. The returned map matches the render size and
  // carries the render camera.
  virtual DescriptorMap Describe(const ViewRender& view) = 0;

  // False when concurrent Describe calls must be serialized by the caller.
  virtual bool thread_safe() const { return true; }
  // Identifies the feature source in result files.
  virtual std::string name() const = 0;
};

// D = 4: surface point / mesh bounding radius, then a constant 1 so that the
// cosine similarity of two descriptors is 1 only for equal points.
// Background pixels are zero.
class GeometricBackend : public DescriptorBackend {
 public:
  static constexpr int kDim = 4;

  DescriptorMap Describe(const ViewRender& view) override;
  std::string name() const override { return "geometric"; }
};

// Precomputed maps at <dir>/<mesh_id>/view_<i>.dmap.
class FileBackend : public DescriptorBackend {
 public:
  explicit FileBackend(std::filesystem::path dir) : dir_(std::move(dir)) {}

  // Throws kBackendError for a missing file or a size mismatch.
  DescriptorMap Describe(const ViewRender& view) override;
  std::string name() const override { return "files:" + dir_.string(); }

  static std::filesystem::path MapPath(const std::filesystem::path& dir, const std::string& mesh_id,
                                       int view_index);

 private:
  std::filesystem::path dir_;
};

}  // namespace demoforge::correspondence

#endif  // DEMOFORGE_CORRESPONDENCE_BACKEND_H_
