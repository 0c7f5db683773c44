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

#ifndef DEMOFORGE_MESH_QUERIES_H_
#define DEMOFORGE_MESH_QUERIES_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "demoforge/mesh/tri_mesh.h"

namespace demoforge::mesh {

struct NeighborVertex {
  uint32_t index = 0;
  Eigen::Vector3d position;
  double distance = 0.0;
};

// Uniform grid over the vertex bounding box; answers exact k-nearest queries.
class VertexGrid {
 public:
  explicit VertexGrid(const std::vector<Eigen::Vector3d>& vertices);

  // The m vertices closest to x, ascending by distance, ties by index.
  std::vector<NeighborVertex> Nearest(const std::vector<Eigen::Vector3d>& vertices,
                                      const Eigen::Vector3d& x,
                                      std::size_t m) const;

 private:
  Eigen::Vector3i CellOf(const Eigen::Vector3d& x) const;
  std::size_t Flatten(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(iz) * dims_.y() + iy) * dims_.x() + ix;
  }

  Eigen::Vector3d origin_;
  double cell_size_ = 1.0;
  Eigen::Vector3i dims_;
  std::vector<uint32_t> cell_start_;  // CSR offsets, size cells + 1
  std::vector<uint32_t> cell_items_;
};

// m must not exceed the vertex count (throws kInvalidArgument).
std::vector<NeighborVertex> NearestVertices(const TriMesh& mesh,
                                            const Eigen::Vector3d& x,
                                            std::size_t m);

// The m points nearest to x among the vertices of the mesh refined so that no
// edge exceeds max_edge: each face is split on a uniform barycentric grid of
// ceil(longest edge / max_edge) steps. Ascending by distance, ties ordered by
// coordinates. Throws kInvalidArgument for max_edge <= 0 or m = 0.
std::vector<Eigen::Vector3d> NearestRefinedPoints(const TriMesh& mesh, const Eigen::Vector3d& x,
                                                  std::size_t m, double max_edge);

Eigen::Vector3d ClosestPointOnTriangle(const Eigen::Vector3d& p,
                                       const Eigen::Vector3d& a,
                                       const Eigen::Vector3d& b,
                                       const Eigen::Vector3d& c);

// Exact unsigned point-to-surface distance (min over all faces). OpenMP
// reduction over faces.
double SurfaceDistance(const TriMesh& mesh, const Eigen::Vector3d& x);

namespace serial {
double SurfaceDistance(const TriMesh& mesh, const Eigen::Vector3d& x);
}  // namespace serial

}  // namespace demoforge::mesh

#endif  // DEMOFORGE_MESH_QUERIES_H_
