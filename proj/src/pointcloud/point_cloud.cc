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

#include "demoforge/pointcloud/point_cloud.h"

#include "demoforge/common/error.h"

namespace demoforge::pointcloud {

void SegmentedPointCloud::Append(const SegmentedPointCloud& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  labels.insert(labels.end(), other.labels.begin(), other.labels.end());
}

void Validate(const SegmentedPointCloud& cloud) {
  if (cloud.points.size() != cloud.labels.size()) {
    throw Error(ErrorCode::kInvalidArgument, "point and label counts differ");
  }
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!cloud.points[i].allFinite()) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite point " + std::to_string(i));
    }
    if (static_cast<int>(cloud.labels[i]) >= kLabelCount) {
      throw Error(ErrorCode::kInvalidArgument, "bad label at point " + std::to_string(i));
    }
  }
}

SegmentedPointCloud Subset(const SegmentedPointCloud& cloud,
                           std::span<const std::size_t> indices) {
  SegmentedPointCloud out;
  out.reserve(indices.size());
  for (const std::size_t i : indices) out.Append(cloud.points[i], cloud.labels[i]);
  return out;
}

SegmentedPointCloud SelectLabel(const SegmentedPointCloud& cloud, Label label) {
  SegmentedPointCloud out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud.labels[i] == label) out.Append(cloud.points[i], label);
  }
  return out;
}

std::array<std::size_t, kLabelCount> LabelHistogram(const SegmentedPointCloud& cloud) {
  std::array<std::size_t, kLabelCount> histogram{};
  for (const Label label : cloud.labels) ++histogram[static_cast<int>(label)];
  return histogram;
}

bool operator==(const SegmentedPointCloud& a, const SegmentedPointCloud& b) {
  return a.points == b.points && a.labels == b.labels;
}

void Validate(const Workspace& workspace) {
  if (!(workspace.min.array() < workspace.max.array()).all()) {
    throw Error(ErrorCode::kInvalidArgument, "workspace min must be < max componentwise");
  }
}

SegmentedPointCloud Crop(const SegmentedPointCloud& cloud, const Workspace& workspace) {
  SegmentedPointCloud out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (workspace.Contains(cloud.points[i])) out.Append(cloud.points[i], cloud.labels[i]);
  }
  if (out.empty()) throw Error(ErrorCode::kEmptyResult, "no points inside the workspace");
  return out;
}

}  // namespace demoforge::pointcloud
