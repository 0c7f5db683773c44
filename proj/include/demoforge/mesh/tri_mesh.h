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

#ifndef DEMOFORGE_MESH_TRI_MESH_H_
#define DEMOFORGE_MESH_TRI_MESH_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "demoforge/geometry/pose.h"

namespace demoforge::mesh {

using Face = std::array<uint32_t, 3>;

class VertexGrid;

// Immutable triangle mesh in its local frame (meters). Construction validates
// the topology and builds the nearest-vertex grid once.
class TriMesh {
 public:
  // Throws kParseError for out-of-range face indices and kDegenerateMesh for
  // faces with area <= kMinFaceArea.
  TriMesh(std::string id, std::vector<Eigen::Vector3d> vertices,
          std::vector<Face> faces,
          geometry::Pose canonical_pose = geometry::Pose::Identity(),
          double scale_to_canonical = 1.0);

  static constexpr double kMinFaceArea = 1e-12;

  const std::string& id() const { return id_; }
  const std::vector<Eigen::Vector3d>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Eigen::Vector3d& vertex(std::size_t i) const { return vertices_[i]; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t face_count() const { return faces_.size(); }

  // Maps the raw (as-loaded) frame to the current canonical frame.
  const geometry::Pose& canonical_pose() const { return canonical_pose_; }
  double scale_to_canonical() const { return scale_to_canonical_; }

  // Unit normal following the face winding (right-hand rule).
  const Eigen::Vector3d& face_normal(std::size_t f) const { return normals_[f]; }
  // Radius of the smallest origin-centered sphere containing all vertices.
  double bounding_radius() const { return bounding_radius_; }
  const Eigen::AlignedBox3d& bounds() const { return bounds_; }
  const VertexGrid& grid() const { return *grid_; }

 private:
  std::string id_;
  std::vector<Eigen::Vector3d> vertices_;
  std::vector<Face> faces_;
  std::vector<Eigen::Vector3d> normals_;
  geometry::Pose canonical_pose_;
  double scale_to_canonical_;
  double bounding_radius_ = 0.0;
  Eigen::AlignedBox3d bounds_;
  std::shared_ptr<const VertexGrid> grid_;
};

// New mesh with every vertex mapped through `pose`; canonical_pose is
// updated so it still maps the raw frame to the new frame.
TriMesh Transformed(const TriMesh& mesh, const geometry::Pose& pose);
TriMesh Scaled(const TriMesh& mesh, double scale, const std::string& new_id);
TriMesh WithId(const TriMesh& mesh, const std::string& new_id);

// Concatenates meshes into one (faces re-indexed).
TriMesh Merge(const std::string& id, const std::vector<TriMesh>& parts);

}  // namespace demoforge::mesh

#endif  // DEMOFORGE_MESH_TRI_MESH_H_
