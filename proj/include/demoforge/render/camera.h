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

#ifndef DEMOFORGE_RENDER_CAMERA_H_
#define DEMOFORGE_RENDER_CAMERA_H_

#include <filesystem>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

#include "demoforge/geometry/pose.h"

namespace demoforge::render {

// Pixel (u, v) has its center at integer coordinates; u grows along image
// columns, v along rows.
struct Intrinsics {
  double fx = 256.0;
  double fy = 256.0;
  double cx = 127.5;
  double cy = 127.5;
  int width = 256;
  int height = 256;
};

// Pinhole camera, OpenCV convention: +z forward, +x right, +y down.
// pose maps camera coordinates to world coordinates.
struct Camera {
  Intrinsics intrinsics;
  geometry::Pose pose;
};

// Throws kInvalidArgument unless fx, fy > 0 and the principal point lies
// inside the image.
void ValidateCamera(const Camera& camera);

Intrinsics SquareIntrinsics(int resolution, double focal);

struct Projection {
  Eigen::Vector2d pixel;
  double depth = 0.0;  // camera-frame z
};

constexpr double kMinProjectionDepth = 1e-6;

std::optional<Projection> TryProject(const Camera& camera, const Eigen::Vector3d& world);
// Throws kBehindCamera when camera-frame z <= kMinProjectionDepth.
Projection Project(const Camera& camera, const Eigen::Vector3d& world);
Eigen::Vector3d Unproject(const Camera& camera, const Eigen::Vector2d& pixel, double depth);

// Camera at `eye` looking at `target`; image "up" follows `up` where possible.
Camera LookAt(const Eigen::Vector3d& eye, const Eigen::Vector3d& target,
              const Eigen::Vector3d& up, const Intrinsics& intrinsics);

struct RingRigParams {
  int views = 8;
  double radius = 0.6;
  double elevation = M_PI / 4.0;  // radians
  Eigen::Vector3d look_at = Eigen::Vector3d::Zero();
  Intrinsics intrinsics;
};

// n cameras evenly spaced in azimuth (starting at 0) on a circle at the given
// elevation, aimed at look_at with up = +z.
std::vector<Camera> RingRig(const RingRigParams& params);

// Scene camera file: a single {intrinsics, pose} object or {"cameras": [...]}.
// Intrinsics: {fx, fy, cx, cy, width, height}; pose: 7-float array.
std::vector<Camera> CamerasFromJson(const nlohmann::json& doc);
std::vector<Camera> LoadCameras(const std::filesystem::path& path);
nlohmann::json CameraToJson(const Camera& camera);

}  // namespace demoforge::render

#endif  // DEMOFORGE_RENDER_CAMERA_H_
