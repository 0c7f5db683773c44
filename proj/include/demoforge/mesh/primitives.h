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

#ifndef DEMOFORGE_MESH_PRIMITIVES_H_
#define DEMOFORGE_MESH_PRIMITIVES_H_

#include <string>

#include <Eigen/Core>

#include "demoforge/geometry/pose.h"
#include "demoforge/mesh/tri_mesh.h"

namespace demoforge::mesh {

// Closed primitives with outward winding. Sizes in meters.

// Axis-aligned box centered at the origin.
TriMesh Box(const std::string& id, const Eigen::Vector3d& half_extents);

// Latitude/longitude tessellation, poles on the z axis.
TriMesh Ellipsoid(const std::string& id, const Eigen::Vector3d& radii, int slices, int stacks);

// Ring around the z axis.
TriMesh Torus(const std::string& id, double major_radius, double minor_radius, int segments,
              int sides);

// Truncated cone along +z from radius r0 at z = 0 to r1 at z = height, with
// both ends capped.
TriMesh Frustum(const std::string& id, double r0, double r1, double height, int segments);

// Open-topped cup: bottom disk plus a double-walled side of the given
// thickness and rim.
TriMesh Cup(const std::string& id, double radius, double height, double thickness, int segments);

}  // namespace demoforge::mesh

#endif  // DEMOFORGE_MESH_PRIMITIVES_H_
