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

#ifndef DEMOFORGE_TRANSFER_EE_PATH_H_
#define DEMOFORGE_TRANSFER_EE_PATH_H_

#include <vector>

#include "demoforge/demo/demonstration.h"
#include "demoforge/geometry/pose.h"

namespace demoforge::transfer {

struct EeWaypoint {
  geometry::Pose pose;  // world frame
  double gripper = 1.0;
};

using EePath = std::vector<EeWaypoint>;

// Steps [begin, end] of a demonstration; empty when begin > end.
EePath PathOf(const demo::Demonstration& demo, int begin, int end);

// Throws kInvalidArgument for non-finite values.
void Validate(const EePath& path);

}  // namespace demoforge::transfer

#endif  // DEMOFORGE_TRANSFER_EE_PATH_H_
