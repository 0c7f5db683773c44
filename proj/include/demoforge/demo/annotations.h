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

#ifndef DEMOFORGE_DEMO_ANNOTATIONS_H_
#define DEMOFORGE_DEMO_ANNOTATIONS_H_

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "demoforge/demo/demonstration.h"
#include "demoforge/geometry/pose.h"
#include "demoforge/mesh/tri_mesh.h"

namespace demoforge::demo {

// Keypoints farther than this from the mesh surface are rejected.
constexpr double kMaxKeypointSurfaceDistance = 0.02;

// Human annotation of a source demo:
// {"mesh_id": str, "skill_range": [t_s, t_e], "object_pose": pose7,
//  "affording_point": [3], "function_point": [3], "t_grasp": int (optional)}
struct Annotation {
  std::string mesh_id;
  StepRange skill_range;
  geometry::Pose object_pose;
  KeypointAnnotation keypoints;
  std::optional<int> t_grasp;
};

// Throws kParseError on missing fields or t_s > t_e.
Annotation AnnotationFromJson(const nlohmann::json& doc);
nlohmann::json AnnotationToJson(const Annotation& annotation);

// Checks the skill range against the demo length (kParseError) and the
// keypoints against the mesh surface (kKeypointOffSurface).
void ValidateAnnotation(const Annotation& annotation, int steps, const mesh::TriMesh& mesh);

Annotation LoadAnnotation(const std::filesystem::path& path);
// LoadAnnotation followed by ValidateAnnotation.
Annotation LoadAnnotation(const std::filesystem::path& path, int steps, const mesh::TriMesh& mesh);

}  // namespace demoforge::demo

#endif  // DEMOFORGE_DEMO_ANNOTATIONS_H_
