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

#include "demoforge/transfer/ee_path.h"

#include <cmath>
#include <string>

#include "demoforge/common/error.h"

namespace demoforge::transfer {

EePath PathOf(const demo::Demonstration& demo, int begin, int end) {
  if (begin < 0 || end >= demo.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "steps [" + std::to_string(begin) + ", " +
                                                 std::to_string(end) + "] outside the demo");
  }
  EePath path;
  for (int t = begin; t <= end; ++t) path.push_back({demo.steps[t].ee_pose, demo.steps[t].gripper});
  return path;
}

void Validate(const EePath& path) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    const EeWaypoint& w = path[i];
    const geometry::Quat& q = w.pose.rotation();
    if (!w.pose.translation().allFinite() || !std::isfinite(q.w()) || !std::isfinite(q.x()) ||
        !std::isfinite(q.y()) || !std::isfinite(q.z()) || !std::isfinite(w.gripper)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite waypoint " + std::to_string(i));
    }
  }
}

}  // namespace demoforge::transfer
