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

#ifndef DEMOFORGE_MESH_CANONICALIZE_H_
#define DEMOFORGE_MESH_CANONICALIZE_H_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "demoforge/geometry/pose.h"
#include "demoforge/mesh/tri_mesh.h"

namespace demoforge::mesh {

// Two principal variances closer than this (relative to the largest) make
// the principal frame ambiguous.
constexpr double kDegenerateEigenRelTol = 1e-9;
// Middle/longest variances closer than this draw a quarter-turn warning.
constexpr double kNearSymmetryRelTol = 0.05;

struct PrincipalAxes {
  Eigen::Vector3d centroid;
  // Ascending variances and matching unit eigenvectors (columns).
  Eigen::Vector3d variances;
  Eigen::Matrix3d axes;
};

PrincipalAxes ComputePrincipalAxes(const std::vector<Eigen::Vector3d>& vertices);

// Moves the vertex centroid to the origin and rotates the principal axes onto
// the world axes: shortest -> z, middle -> y, longest -> x. Signs of z and y
// make the vertex-coordinate skewness along them non-negative (falling back
// to a positive dominant component when the skewness vanishes); x completes
// a right-handed frame. The mesh is not rescaled. canonical_pose() of the
// result maps the original raw frame to the new frame.
//
// Throws kDegenerateCovariance when two variances coincide. Appends a warning
// when the middle and longest variances are within kNearSymmetryRelTol.
TriMesh CanonicalizePca(const TriMesh& mesh, std::vector<std::string>* warnings = nullptr);

// Applies a manual raw->canonical pose (from an override file) to a mesh
// still in its raw frame.
TriMesh ApplyCanonicalPose(const TriMesh& raw_mesh, const geometry::Pose& raw_to_canonical);

}  // namespace demoforge::mesh

#endif  // DEMOFORGE_MESH_CANONICALIZE_H_
