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

#ifndef DEMOFORGE_COMMON_ERROR_H_
#define DEMOFORGE_COMMON_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace demoforge {

enum class ErrorCode {
  kParseError,
  kIoError,
  kConfigError,
  kInvalidArgument,
  kIndexOutOfRange,
  // demo_model
  kNoGraspFound,
  kKeypointOffSurface,
  // pointcloud
  kEmptyResult,
  kTooFewPoints,
  // mesh
  kDegenerateMesh,
  kDegenerateCovariance,
  // render
  kBehindCamera,
  // correspondence
  kEmptyMask,
  kNoVisibleNeighbors,
  kZeroWeight,
  kBackendError,
  // transfer
  kNotGrasped,
  kCollisionDetected,
  // kinematics
  kJointLimit,
  kIkUnreachable,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by transition planning; carries the first waypoint that failed the
// collision callback.
class CollisionError : public Error {
 public:
  CollisionError(std::size_t waypoint_index, const std::string& message);

  std::size_t waypoint_index() const { return waypoint_index_; }

 private:
  std::size_t waypoint_index_;
};

}  // namespace demoforge

#endif  // DEMOFORGE_COMMON_ERROR_H_
