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

#include "demoforge/mesh/tri_mesh.h"

#include <string>
#include <utility>

#include "demoforge/common/error.h"
#include "demoforge/mesh/queries.h"

namespace demoforge::mesh {

TriMesh::TriMesh(std::string id, std::vector<Eigen::Vector3d> vertices,
                 std::vector<Face> faces, geometry::Pose canonical_pose,
                 double scale_to_canonical)
    : id_(std::move(id)),
      vertices_(std::move(vertices)),
      faces_(std::move(faces)),
      canonical_pose_(canonical_pose),
      scale_to_canonical_(scale_to_canonical) {
  if (vertices_.empty() || faces_.empty()) {
    throw Error(ErrorCode::kDegenerateMesh, "mesh '" + id_ + "' has no faces");
  }
  if (!(scale_to_canonical_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "scale_to_canonical must be positive");
  }
  for (const Eigen::Vector3d& v : vertices_) {
    if (!v.allFinite()) {
      throw Error(ErrorCode::kParseError, "mesh '" + id_ + "' has a non-finite vertex");
    }
    bounds_.extend(v);
    bounding_radius_ = std::max(bounding_radius_, v.norm());
  }
  normals_.reserve(faces_.size());
  const auto vertex_count = static_cast<uint32_t>(vertices_.size());
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const Face& face = faces_[f];
    for (const uint32_t index : face) {
      if (index >= vertex_count) {
        throw Error(ErrorCode::kParseError,
                    "mesh '" + id_ + "' face " + std::to_string(f) +
                        " references vertex " + std::to_string(index) + " of " +
                        std::to_string(vertex_count));
      }
    }
    const Eigen::Vector3d cross = (vertices_[face[1]] - vertices_[face[0]])
                                      .cross(vertices_[face[2]] - vertices_[face[0]]);
    const double area = 0.5 * cross.norm();
    if (!(area > kMinFaceArea)) {
      throw Error(ErrorCode::kDegenerateMesh,
                  "mesh '" + id_ + "' face " + std::to_string(f) + " has zero area");
    }
    normals_.push_back(cross.normalized());
  }
  grid_ = std::make_shared<const VertexGrid>(vertices_);
}

TriMesh Transformed(const TriMesh& mesh, const geometry::Pose& pose) {
  std::vector<Eigen::Vector3d> vertices;
  vertices.reserve(mesh.vertex_count());
  for (const Eigen::Vector3d& v : mesh.vertices()) vertices.push_back(pose.Apply(v));
  return TriMesh(mesh.id(), std::move(vertices), mesh.faces(),
                 pose * mesh.canonical_pose(), mesh.scale_to_canonical());
}

TriMesh Scaled(const TriMesh& mesh, double scale, const std::string& new_id) {
  std::vector<Eigen::Vector3d> vertices;
  vertices.reserve(mesh.vertex_count());
  for (const Eigen::Vector3d& v : mesh.vertices()) vertices.push_back(scale * v);
  return TriMesh(new_id, std::move(vertices), mesh.faces());
}

TriMesh WithId(const TriMesh& mesh, const std::string& new_id) {
  return TriMesh(new_id, mesh.vertices(), mesh.faces(), mesh.canonical_pose(),
                 mesh.scale_to_canonical());
}

TriMesh Merge(const std::string& id, const std::vector<TriMesh>& parts) {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;
  for (const TriMesh& part : parts) {
    const auto offset = static_cast<uint32_t>(vertices.size());
    vertices.insert(vertices.end(), part.vertices().begin(), part.vertices().end());
    for (const Face& f : part.faces()) {
      faces.push_back({f[0] + offset, f[1] + offset, f[2] + offset});
    }
  }
  return TriMesh(id, std::move(vertices), std::move(faces));
}

}  // namespace demoforge::mesh
