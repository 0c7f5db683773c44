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

#include "demoforge/render/camera.h"

#include <cmath>

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"

namespace demoforge::render {

using nlohmann::json;

void ValidateCamera(const Camera& camera) {
  const Intrinsics& k = camera.intrinsics;
  if (!(k.fx > 0.0) || !(k.fy > 0.0) || k.width <= 0 || k.height <= 0 ||
      !(k.cx >= 0.0 && k.cx < k.width) || !(k.cy >= 0.0 && k.cy < k.height)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid camera intrinsics");
  }
}

Intrinsics SquareIntrinsics(int resolution, double focal) {
  const double c = 0.5 * (resolution - 1);
  return Intrinsics{focal, focal, c, c, resolution, resolution};
}

std::optional<Projection> TryProject(const Camera& camera, const Eigen::Vector3d& world) {
  const Eigen::Vector3d p = camera.pose.Inverse().Apply(world);
  if (p.z() <= kMinProjectionDepth) return std::nullopt;
  const Intrinsics& k = camera.intrinsics;
  return Projection{Eigen::Vector2d(k.fx * p.x() / p.z() + k.cx, k.fy * p.y() / p.z() + k.cy),
                    p.z()};
}

Projection Project(const Camera& camera, const Eigen::Vector3d& world) {
  if (auto projection = TryProject(camera, world)) return *projection;
  throw Error(ErrorCode::kBehindCamera, "point is behind the camera");
}

Eigen::Vector3d Unproject(const Camera& camera, const Eigen::Vector2d& pixel, double depth) {
  const Intrinsics& k = camera.intrinsics;
  const Eigen::Vector3d p((pixel.x() - k.cx) / k.fx * depth, (pixel.y() - k.cy) / k.fy * depth,
                          depth);
  return camera.pose.Apply(p);
}

Camera LookAt(const Eigen::Vector3d& eye, const Eigen::Vector3d& target,
              const Eigen::Vector3d& up, const Intrinsics& intrinsics) {
  const Eigen::Vector3d forward = (target - eye).normalized();
  Eigen::Vector3d right = forward.cross(up);
  if (right.norm() < 1e-9) {
    // Looking along `up`: any perpendicular works.
    right = forward.cross(std::abs(forward.x()) < 0.9 ? Eigen::Vector3d::UnitX()
                                                      : Eigen::Vector3d::UnitY());
  }
  right.normalize();
  const Eigen::Vector3d down = forward.cross(right);
  Eigen::Matrix3d rotation;
  rotation.col(0) = right;
  rotation.col(1) = down;
  rotation.col(2) = forward;
  return Camera{intrinsics, geometry::Pose(geometry::Quat::FromMatrix(rotation), eye)};
}

std::vector<Camera> RingRig(const RingRigParams& params) {
  if (params.views < 1) throw Error(ErrorCode::kInvalidArgument, "ring rig needs >= 1 view");
  std::vector<Camera> cameras;
  cameras.reserve(params.views);
  const double ce = std::cos(params.elevation);
  const double se = std::sin(params.elevation);
  for (int i = 0; i < params.views; ++i) {
    const double azimuth = 2.0 * M_PI * i / params.views;
    const Eigen::Vector3d offset(ce * std::cos(azimuth), ce * std::sin(azimuth), se);
    cameras.push_back(LookAt(params.look_at + params.radius * offset, params.look_at,
                             Eigen::Vector3d::UnitZ(), params.intrinsics));
  }
  return cameras;
}

namespace {

Camera CameraFromJson(const json& j) {
  try {
    const json& k = j.at("intrinsics");
    Camera camera;
    camera.intrinsics.fx = k.at("fx").get<double>();
    camera.intrinsics.fy = k.at("fy").get<double>();
    camera.intrinsics.cx = k.at("cx").get<double>();
    camera.intrinsics.cy = k.at("cy").get<double>();
    camera.intrinsics.width = k.at("width").get<int>();
    camera.intrinsics.height = k.at("height").get<int>();
    camera.pose = geometry::FromArray(j.at("pose").get<std::vector<double>>());
    ValidateCamera(camera);
    return camera;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("camera: ") + e.what());
  }
}

}  // namespace

std::vector<Camera> CamerasFromJson(const json& doc) {
  std::vector<Camera> cameras;
  if (doc.is_object() && doc.contains("cameras")) {
    for (const json& j : doc.at("cameras")) cameras.push_back(CameraFromJson(j));
  } else if (doc.is_array()) {
    for (const json& j : doc) cameras.push_back(CameraFromJson(j));
  } else {
    cameras.push_back(CameraFromJson(doc));
  }
  if (cameras.empty()) throw Error(ErrorCode::kParseError, "camera file lists no cameras");
  return cameras;
}

std::vector<Camera> LoadCameras(const std::filesystem::path& path) {
  try {
    return CamerasFromJson(json::parse(ReadFileText(path)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

json CameraToJson(const Camera& camera) {
  const Intrinsics& k = camera.intrinsics;
  return json{{"intrinsics",
               {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy},
                {"width", k.width}, {"height", k.height}}},
              {"pose", geometry::ToArray(camera.pose)}};
}

}  // namespace demoforge::render
