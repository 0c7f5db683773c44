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

#include "demoforge/transfer/pose_sampler.h"

#include <cmath>
#include <vector>

#include "demoforge/common/error.h"

namespace demoforge::transfer {
namespace {

constexpr double kDegToRad = M_PI / 180.0;

std::pair<double, double> Range(const nlohmann::json& doc, const char* key) {
  const auto values = doc.at(key).get<std::vector<double>>();
  if (values.size() != 2) throw Error(ErrorCode::kConfigError, std::string(key) + " needs [lo, hi]");
  return {values[0], values[1]};
}

}  // namespace

void Validate(const PoseSampler& s) {
  if (!(s.x_min <= s.x_max && s.y_min <= s.y_max && s.yaw_min <= s.yaw_max)) {
    throw Error(ErrorCode::kConfigError, "pose sampler range with lo > hi");
  }
}

geometry::Pose SamplePose(const PoseSampler& sampler, Rng& rng) {
  const double x = rng.Uniform(sampler.x_min, sampler.x_max);
  const double y = rng.Uniform(sampler.y_min, sampler.y_max);
  const double yaw = rng.Uniform(sampler.yaw_min, sampler.yaw_max);
  return geometry::Pose(geometry::Quat::RotZ(yaw) * sampler.base_rotation,
                        Eigen::Vector3d(x, y, sampler.z));
}

PoseSampler PoseSamplerFromJson(const nlohmann::json& doc) {
  PoseSampler s;
  try {
    std::tie(s.x_min, s.x_max) = Range(doc, "x");
    std::tie(s.y_min, s.y_max) = Range(doc, "y");
    std::tie(s.yaw_min, s.yaw_max) = Range(doc, "yaw_deg");
    s.yaw_min *= kDegToRad;
    s.yaw_max *= kDegToRad;
    s.z = doc.value("z", 0.0);
    if (doc.contains("base_rotation")) {
      const auto q = doc.at("base_rotation").get<std::vector<double>>();
      if (q.size() != 4) throw Error(ErrorCode::kConfigError, "base_rotation needs [w, x, y, z]");
      s.base_rotation = geometry::Quat(q[0], q[1], q[2], q[3]);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("sampler: ") + e.what());
  }
  Validate(s);
  return s;
}

}  // namespace demoforge::transfer
