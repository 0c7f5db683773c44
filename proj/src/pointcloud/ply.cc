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

#include "demoforge/pointcloud/ply.h"

#include <sstream>

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"

namespace demoforge::pointcloud {

std::string ToAsciiPly(const SegmentedPointCloud& cloud) {
  std::ostringstream out;
  out << "ply\nformat ascii 1.0\nelement vertex " << cloud.size()
      << "\nproperty float x\nproperty float y\nproperty float z\nproperty uchar label\n"
         "end_header\n";
  out.precision(9);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Eigen::Vector3f& p = cloud.points[i];
    out << p.x() << ' ' << p.y() << ' ' << p.z() << ' ' << static_cast<int>(cloud.labels[i])
        << '\n';
  }
  return out.str();
}

void WriteAsciiPly(const SegmentedPointCloud& cloud, const std::filesystem::path& path) {
  WriteFileText(path, ToAsciiPly(cloud));
}

SegmentedPointCloud ParseAsciiPly(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t count = 0;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (line.rfind("element vertex", 0) == 0) count = std::stoul(line.substr(15));
    if (line == "end_header") {
      header_done = true;
      break;
    }
  }
  if (!header_done) throw Error(ErrorCode::kParseError, "PLY header not terminated");
  SegmentedPointCloud cloud;
  cloud.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    float x, y, z;
    int label;
    if (!(in >> x >> y >> z >> label) || label < 0 || label >= kLabelCount) {
      throw Error(ErrorCode::kParseError, "bad PLY vertex " + std::to_string(i));
    }
    cloud.Append(Eigen::Vector3f(x, y, z), static_cast<Label>(label));
  }
  return cloud;
}

}  // namespace demoforge::pointcloud
