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

#include "demoforge/common/error.h"

namespace demoforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNoGraspFound: return "NoGraspFound";
    case ErrorCode::kKeypointOffSurface: return "KeypointOffSurface";
    case ErrorCode::kEmptyResult: return "EmptyResult";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kDegenerateMesh: return "DegenerateMesh";
    case ErrorCode::kDegenerateCovariance: return "DegenerateCovariance";
    case ErrorCode::kBehindCamera: return "BehindCamera";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kNoVisibleNeighbors: return "NoVisibleNeighbors";
    case ErrorCode::kZeroWeight: return "ZeroWeight";
    case ErrorCode::kBackendError: return "BackendError";
    case ErrorCode::kNotGrasped: return "NotGrasped";
    case ErrorCode::kCollisionDetected: return "CollisionDetected";
    case ErrorCode::kJointLimit: return "JointLimit";
    case ErrorCode::kIkUnreachable: return "IkUnreachable";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

CollisionError::CollisionError(std::size_t waypoint_index,
                               const std::string& message)
    : Error(ErrorCode::kCollisionDetected, message),
      waypoint_index_(waypoint_index) {}

}  // namespace demoforge
