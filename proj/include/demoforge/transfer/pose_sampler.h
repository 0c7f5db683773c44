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

#ifndef DEMOFORGE_TRANSFER_POSE_SAMPLER_H_
#define DEMOFORGE_TRANSFER_POSE_SAMPLER_H_

#include "json.hpp"

#include "demoforge/common/random.h"
#include "demoforge/geometry/pose.h"

namespace demoforge::transfer {

// Object placements: x, y uniform in a box, yaw uniform about +z, z fixed.
// Angles in radians.
struct PoseSampler {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double yaw_min = 0.0;
  double yaw_max = 0.0;
  double z = 0.0;
  // Applied before the yaw, e.g. to stand a canonical mesh upright.
  geometry::Quat base_rotation;
};

// Throws kConfigError when a range is inverted.
void Validate(const PoseSampler& sampler);

// Draws x, then y, then yaw. Rotation = RotZ(yaw) * base_rotation.
geometry::Pose SamplePose(const PoseSampler& sampler, Rng& rng);

// {"x": [lo, hi], "y": [lo, hi], "yaw_deg": [lo, hi], "z": z,
//  "base_rotation": [w, x, y, z] (optional)}. Meters and degrees.
PoseSampler PoseSamplerFromJson(const nlohmann::json& doc);

}  // namespace demoforge::transfer

#endif  // DEMOFORGE_TRANSFER_POSE_SAMPLER_H_
