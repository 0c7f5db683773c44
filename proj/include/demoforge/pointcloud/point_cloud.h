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

#ifndef DEMOFORGE_POINTCLOUD_POINT_CLOUD_H_
#define DEMOFORGE_POINTCLOUD_POINT_CLOUD_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace demoforge::pointcloud {

enum class Label : uint8_t { kRobot = 0, kObject = 1, kGoal = 2, kOther = 3 };
constexpr int kLabelCount = 4;

// Points in meters (world frame) with one label each.
struct SegmentedPointCloud {
  std::vector<Eigen::Vector3f> points;
  std::vector<Label> labels;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  void reserve(std::size_t n) {
    points.reserve(n);
    labels.reserve(n);
  }
  void Append(const Eigen::Vector3f& point, Label label) {
    points.push_back(point);
    labels.push_back(label);
  }
  void Append(const SegmentedPointCloud& other);
};

// Throws kInvalidArgument on length mismatch or non-finite points.
void Validate(const SegmentedPointCloud& cloud);

SegmentedPointCloud Subset(const SegmentedPointCloud& cloud,
                           std::span<const std::size_t> indices);
SegmentedPointCloud SelectLabel(const SegmentedPointCloud& cloud, Label label);
std::array<std::size_t, kLabelCount> LabelHistogram(const SegmentedPointCloud& cloud);

bool operator==(const SegmentedPointCloud& a, const SegmentedPointCloud& b);

// Axis-aligned box, world frame.
struct Workspace {
  Eigen::Vector3d min;
  Eigen::Vector3d max;

  bool Contains(const Eigen::Vector3f& p) const {
    return p.x() >= min.x() && p.y() >= min.y() && p.z() >= min.z() &&
           p.x() <= max.x() && p.y() <= max.y() && p.z() <= max.z();
  }
};

void Validate(const Workspace& workspace);

// Keeps the points inside the box (boundary inclusive). Throws kEmptyResult
// when none survive.
SegmentedPointCloud Crop(const SegmentedPointCloud& cloud, const Workspace& workspace);

}  // namespace demoforge::pointcloud

#endif  // DEMOFORGE_POINTCLOUD_POINT_CLOUD_H_
