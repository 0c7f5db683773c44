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

#ifndef DEMOFORGE_MESH_MESH_IO_H_
#define DEMOFORGE_MESH_MESH_IO_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "demoforge/geometry/pose.h"
#include "demoforge/mesh/tri_mesh.h"

namespace demoforge::mesh {

// Loads an OBJ (v/f lines) or binary little-endian PLY by extension. The mesh
// id is the file stem. Result is in its raw frame with identity
// canonical_pose.
TriMesh LoadMesh(const std::filesystem::path& path);

TriMesh ParseObj(std::string_view text, const std::string& id);
TriMesh ParsePly(std::span<const uint8_t> bytes, const std::string& id);

// Writes v/f lines. The canonical pose is recorded as a comment only.
void WriteObj(const TriMesh& mesh, const std::filesystem::path& path);

// Manual canonical-pose overrides: JSON object {mesh_id: [w,x,y,z,tx,ty,tz]},
// each pose mapping the raw frame to the canonical frame.
std::map<std::string, geometry::Pose> LoadPoseOverrides(const std::filesystem::path& path);

}  // namespace demoforge::mesh

#endif  // DEMOFORGE_MESH_MESH_IO_H_
