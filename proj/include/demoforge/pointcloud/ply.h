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

#ifndef DEMOFORGE_POINTCLOUD_PLY_H_
#define DEMOFORGE_POINTCLOUD_PLY_H_

#include <filesystem>
#include <string>

#include "demoforge/pointcloud/point_cloud.h"

namespace demoforge::pointcloud {

// ASCII PLY with vertex properties x, y, z (float) and label (uchar).
std::string ToAsciiPly(const SegmentedPointCloud& cloud);
void WriteAsciiPly(const SegmentedPointCloud& cloud, const std::filesystem::path& path);
SegmentedPointCloud ParseAsciiPly(const std::string& text);

}  // namespace demoforge::pointcloud

#endif  // DEMOFORGE_POINTCLOUD_PLY_H_
