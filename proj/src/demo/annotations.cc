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

#include "demoforge/demo/annotations.h"

#include <cstdio>

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"
#include "demoforge/mesh/queries.h"

namespace demoforge::demo {
namespace {

Eigen::Vector3d Vec3(const nlohmann::json& value) {
  const auto v = value.get<std::vector<double>>();
  if (v.size() != 3) throw Error(ErrorCode::kParseError, "expected 3 values");
  return Eigen::Vector3d(v[0], v[1], v[2]);
}

}  // namespace

Annotation AnnotationFromJson(const nlohmann::json& doc) {
  Annotation annotation;
  try {
    annotation.mesh_id = doc.value("mesh_id", "");
    const auto range = doc.at("skill_range").get<std::vector<int>>();
    if (range.size() != 2) throw Error(ErrorCode::kParseError, "skill_range needs [t_s, t_e]");
    annotation.skill_range = {range[0], range[1]};
    annotation.object_pose = doc.contains("object_pose")
                                 ? geometry::FromArray(doc.at("object_pose").get<std::vector<double>>())
                                 : geometry::Pose::Identity();
    annotation.keypoints.affording_point = Vec3(doc.at("affording_point"));
    annotation.keypoints.function_point = Vec3(doc.at("function_point"));
    if (doc.contains("t_grasp")) annotation.t_grasp = doc.at("t_grasp").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("annotation: ") + e.what());
  }
  if (annotation.skill_range.begin > annotation.skill_range.end) {
    throw Error(ErrorCode::kParseError, "skill range start after its end");
  }
  if (annotation.skill_range.begin < 0) throw Error(ErrorCode::kParseError, "negative skill start");
  return annotation;
}

nlohmann::json AnnotationToJson(const Annotation& annotation) {
  const Eigen::Vector3d& a = annotation.keypoints.affording_point;
  const Eigen::Vector3d& f = annotation.keypoints.function_point;
  nlohmann::json doc = {
      {"mesh_id", annotation.mesh_id},
      {"skill_range", {annotation.skill_range.begin, annotation.skill_range.end}},
      {"object_pose", geometry::ToArray(annotation.object_pose)},
      {"affording_point", {a.x(), a.y(), a.z()}},
      {"function_point", {f.x(), f.y(), f.z()}},
  };
  if (annotation.t_grasp) doc["t_grasp"] = *annotation.t_grasp;
  return doc;
}

void ValidateAnnotation(const Annotation& annotation, int steps, const mesh::TriMesh& mesh) {
  if (annotation.skill_range.end >= steps) {
    throw Error(ErrorCode::kParseError, "skill range ends at " +
                                            std::to_string(annotation.skill_range.end) +
                                            " on a demo of " + std::to_string(steps) + " steps");
  }
  const auto check = [&](const Eigen::Vector3d& point, const char* name) {
    const double distance = mesh::SurfaceDistance(mesh, point);
    if (distance > kMaxKeypointSurfaceDistance) {
      char buffer[128];
      std::snprintf(buffer, sizeof(buffer), "%s is %.4f m from the mesh surface", name, distance);
      throw Error(ErrorCode::kKeypointOffSurface, buffer);
    }
  };
  check(annotation.keypoints.affording_point, "affording point");
  check(annotation.keypoints.function_point, "function point");
}

Annotation LoadAnnotation(const std::filesystem::path& path) {
  try {
    return AnnotationFromJson(nlohmann::json::parse(ReadFileText(path)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

Annotation LoadAnnotation(const std::filesystem::path& path, int steps, const mesh::TriMesh& mesh) {
  Annotation annotation = LoadAnnotation(path);
  ValidateAnnotation(annotation, steps, mesh);
  return annotation;
}

}  // namespace demoforge::demo
