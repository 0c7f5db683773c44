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

#ifndef DEMOFORGE_POINTCLOUD_SAMPLING_H_
#define DEMOFORGE_POINTCLOUD_SAMPLING_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "demoforge/pointcloud/point_cloud.h"

namespace demoforge::pointcloud {

// Index of the point farthest from the centroid; ties go to the lowest index.
std::size_t CentroidFarthestIndex(std::span<const Eigen::Vector3f> points);

// Greedy farthest point sampling. The first pick is CentroidFarthestIndex;
// each later pick maximizes the squared distance (float, x²+y²+z² in that
// order) to the already-selected set, ties to the lowest index. Selection
// order is returned. Throws kTooFewPoints unless 1 <= n <= points.size().
//
// Points are bucketed into a grid and a bucket is skipped when its bounding
// box is provably too far from the newest pick to lower any of its
// distances, so the result equals serial::FarthestPointIndices bit for bit.
// Buckets are updated in parallel.
std::vector<std::size_t> FarthestPointIndices(std::span<const Eigen::Vector3f> points,
                                              std::size_t n);

SegmentedPointCloud FarthestPointSample(const SegmentedPointCloud& cloud, std::size_t n);

namespace serial {
// Plain O(n * N) reference.
std::vector<std::size_t> FarthestPointIndices(std::span<const Eigen::Vector3f> points,
                                              std::size_t n);
}  // namespace serial

// Cluster id per point (-1 = noise). Neighborhoods are closed balls of radius
// eps and include the point itself; a core point has >= min_pts neighbors.
// Clusters are numbered in order of their first core point.
std::vector<int> DbscanLabels(std::span<const Eigen::Vector3f> points, double eps,
                              std::size_t min_pts);

// Keeps the largest cluster (ties: the cluster containing the lowest point
// index), in original order. Throws kEmptyResult when every point is noise.
SegmentedPointCloud DbscanFilter(const SegmentedPointCloud& cloud, double eps,
                                 std::size_t min_pts = 10);

// Neighbor counts within eps; the OpenMP kernel behind DbscanLabels.
std::vector<std::size_t> NeighborCounts(std::span<const Eigen::Vector3f> points, double eps);

namespace serial {
std::vector<std::size_t> NeighborCounts(std::span<const Eigen::Vector3f> points, double eps);
}  // namespace serial

}  // namespace demoforge::pointcloud

#endif  // DEMOFORGE_POINTCLOUD_SAMPLING_H_
