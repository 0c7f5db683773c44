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

#include "demoforge/demo/dataset.h"

#include <exception>
#include <fstream>
#include <mutex>

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"

namespace demoforge::demo {
namespace {

namespace fs = std::filesystem;

constexpr std::size_t kTrajStride = 8 * sizeof(double);
constexpr std::size_t kPointStride = 4 * sizeof(float);

nlohmann::json Vec3Json(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

Eigen::Vector3d Vec3(const nlohmann::json& value) {
  const auto v = value.get<std::vector<double>>();
  if (v.size() != 3) throw Error(ErrorCode::kParseError, "expected 3 values");
  return Eigen::Vector3d(v[0], v[1], v[2]);
}

std::vector<uint8_t> ReadSized(const fs::path& path, std::size_t expected) {
  std::vector<uint8_t> bytes = ReadFileBytes(path);
  if (bytes.size() != expected) {
    throw Error(ErrorCode::kParseError, path.string() + " has " + std::to_string(bytes.size()) +
                                            " bytes, expected " + std::to_string(expected));
  }
  return bytes;
}

const ManifestEntry& EntryAt(const Manifest& manifest, std::size_t index) {
  if (index >= manifest.demos.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "demo " + std::to_string(index) + " of " +
                                                 std::to_string(manifest.demos.size()));
  }
  return manifest.demos[index];
}

}  // namespace

nlohmann::json ManifestToJson(const Manifest& manifest) {
  nlohmann::json demos = nlohmann::json::array();
  for (const ManifestEntry& e : manifest.demos) {
    demos.push_back({
        {"dir", e.dir},
        {"steps", e.steps},
        {"mesh_id", e.mesh_id},
        {"pose", geometry::ToArray(e.pose)},
        {"seed", e.seed},
        {"t_grasp", e.t_grasp},
        {"skill_range", {e.skill_range.begin, e.skill_range.end}},
        {"affording_point", Vec3Json(e.keypoints.affording_point)},
        {"function_point", Vec3Json(e.keypoints.function_point)},
        {"joints", e.joint_count},
        {"mesh_index", e.mesh_index},
        {"pose_index", e.pose_index},
    });
  }
  return {{"schema_version", manifest.schema_version},
          {"N", manifest.cloud_size},
          {"count", manifest.demos.size()},
          {"demos", demos}};
}

Manifest ManifestFromJson(const nlohmann::json& doc) {
  Manifest manifest;
  try {
    manifest.schema_version = doc.at("schema_version").get<int>();
    if (manifest.schema_version != kSchemaVersion) {
      throw Error(ErrorCode::kParseError,
                  "unsupported schema version " + std::to_string(manifest.schema_version));
    }
    manifest.cloud_size = doc.at("N").get<std::size_t>();
    for (const nlohmann::json& d : doc.at("demos")) {
      ManifestEntry e;
      e.dir = d.at("dir").get<std::string>();
      e.steps = d.at("steps").get<int>();
      e.mesh_id = d.at("mesh_id").get<std::string>();
      e.pose = geometry::FromArray(d.at("pose").get<std::vector<double>>());
      e.seed = d.at("seed").get<uint64_t>();
      e.t_grasp = d.at("t_grasp").get<int>();
      const auto range = d.at("skill_range").get<std::vector<int>>();
      if (range.size() != 2) throw Error(ErrorCode::kParseError, "skill_range needs 2 values");
      e.skill_range = {range[0], range[1]};
      e.keypoints.affording_point = Vec3(d.at("affording_point"));
      e.keypoints.function_point = Vec3(d.at("function_point"));
      e.joint_count = d.value("joints", 0);
      e.mesh_index = d.value("mesh_index", -1);
      e.pose_index = d.value("pose_index", -1);
      if (e.dir.empty() || e.dir.find('/') != std::string::npos || e.dir == "..") {
        throw Error(ErrorCode::kParseError, "bad demo directory name '" + e.dir + "'");
      }
      manifest.demos.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("manifest: ") + e.what());
  }
  return manifest;
}

ManifestEntry EntryFor(const Demonstration& demo, const std::string& dir) {
  ManifestEntry e;
  e.dir = dir;
  e.steps = demo.size();
  e.mesh_id = demo.mesh_id;
  e.pose = demo.object_pose;
  e.seed = demo.seed;
  e.t_grasp = demo.t_grasp;
  e.skill_range = demo.skill_range;
  e.keypoints = demo.keypoints;
  e.joint_count = demo.steps.empty() ? 0 : static_cast<int>(demo.steps.front().joints.size());
  e.mesh_index = demo.mesh_index;
  e.pose_index = demo.pose_index;
  return e;
}

void WriteDemoFiles(const Demonstration& demo, std::size_t cloud_size, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());

  const std::size_t steps = demo.steps.size();
  const int joint_count = steps == 0 ? 0 : static_cast<int>(demo.steps.front().joints.size());
  std::vector<uint8_t> traj;
  traj.reserve(steps * kTrajStride);
  std::vector<uint8_t> clouds;
  clouds.reserve(steps * cloud_size * kPointStride);
  std::vector<uint8_t> joints;
  for (std::size_t t = 0; t < steps; ++t) {
    const DemoStep& step = demo.steps[t];
    for (const double v : geometry::ToArray(step.ee_pose)) AppendLe(traj, v);
    AppendLe(traj, step.gripper);
    if (step.cloud.size() != cloud_size) {
      throw Error(ErrorCode::kInvalidArgument,
                  "step " + std::to_string(t) + " has " + std::to_string(step.cloud.size()) +
                      " points, dataset N is " + std::to_string(cloud_size));
    }
    for (std::size_t i = 0; i < cloud_size; ++i) {
      const Eigen::Vector3f& p = step.cloud.points[i];
      AppendLe(clouds, p.x());
      AppendLe(clouds, p.y());
      AppendLe(clouds, p.z());
      AppendLe(clouds, static_cast<float>(step.cloud.labels[i]));
    }
    if (step.joints.size() != joint_count) {
      throw Error(ErrorCode::kInvalidArgument, "joint vector length changes at step " +
                                                   std::to_string(t));
    }
    for (int j = 0; j < joint_count; ++j) AppendLe(joints, step.joints[j]);
  }
  WriteFileBytes(dir / "traj.bin", traj);
  WriteFileBytes(dir / "clouds.bin", clouds);
  if (joint_count > 0) WriteFileBytes(dir / "joints.bin", joints);
}

void WriteManifest(const Manifest& manifest, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  const fs::path temp = dir / "manifest.json.tmp";
  WriteFileText(temp, ManifestToJson(manifest).dump(2) + "\n");
  fs::rename(temp, dir / "manifest.json", ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot finalize manifest: " + ec.message());
}

Manifest WriteDataset(std::span<const Demonstration> demos, const fs::path& dir,
                      std::size_t cloud_size) {
  Manifest manifest;
  manifest.cloud_size = cloud_size;
  bool first = true;
  for (const Demonstration& demo : demos) {
    for (const DemoStep& step : demo.steps) {
      if (first) {
        manifest.cloud_size = step.cloud.size();
        first = false;
      } else if (step.cloud.size() != manifest.cloud_size) {
        throw Error(ErrorCode::kInvalidArgument, "demos mix cloud sizes " +
                                                     std::to_string(manifest.cloud_size) +
                                                     " and " + std::to_string(step.cloud.size()));
      }
    }
  }
  for (std::size_t k = 0; k < demos.size(); ++k) {
    manifest.demos.push_back(EntryFor(demos[k], "demo_" + std::to_string(k)));
  }
  std::exception_ptr failure;
  std::mutex mutex;
  const long count = static_cast<long>(demos.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < count; ++k) {
    try {
      WriteDemoFiles(demos[k], manifest.cloud_size, dir / manifest.demos[k].dir);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  WriteManifest(manifest, dir);
  return manifest;
}

Manifest ReadManifest(const fs::path& dir) {
  try {
    return ManifestFromJson(nlohmann::json::parse(ReadFileText(dir / "manifest.json")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, "manifest: " + std::string(e.what()));
  }
}

Demonstration ReadDemo(const fs::path& dir, const Manifest& manifest, std::size_t index) {
  const ManifestEntry& e = EntryAt(manifest, index);
  const fs::path demo_dir = dir / e.dir;
  const std::size_t steps = static_cast<std::size_t>(e.steps);
  const std::size_t n = manifest.cloud_size;
  const std::vector<uint8_t> traj = ReadSized(demo_dir / "traj.bin", steps * kTrajStride);
  const std::vector<uint8_t> clouds = ReadSized(demo_dir / "clouds.bin", steps * n * kPointStride);
  std::vector<uint8_t> joints;
  if (e.joint_count > 0) {
    joints = ReadSized(demo_dir / "joints.bin", steps * e.joint_count * sizeof(double));
  }

  Demonstration demo;
  demo.t_grasp = e.t_grasp;
  demo.skill_range = e.skill_range;
  demo.object_pose = e.pose;
  demo.keypoints = e.keypoints;
  demo.mesh_id = e.mesh_id;
  demo.seed = e.seed;
  demo.mesh_index = e.mesh_index;
  demo.pose_index = e.pose_index;
  demo.steps.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    DemoStep& step = demo.steps[t];
    double values[7];
    for (int i = 0; i < 7; ++i) values[i] = ReadLe<double>(traj, t * kTrajStride + i * 8);
    step.ee_pose = geometry::FromArray(values);
    step.gripper = ReadLe<double>(traj, t * kTrajStride + 56);
    step.cloud.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t offset = (t * n + i) * kPointStride;
      const Eigen::Vector3f p(ReadLe<float>(clouds, offset), ReadLe<float>(clouds, offset + 4),
                              ReadLe<float>(clouds, offset + 8));
      const float label = ReadLe<float>(clouds, offset + 12);
      if (!(label >= 0.0f && label < pointcloud::kLabelCount)) {
        throw Error(ErrorCode::kParseError, "bad label in " + e.dir);
      }
      step.cloud.Append(p, static_cast<pointcloud::Label>(static_cast<int>(label)));
    }
    if (e.joint_count > 0) {
      step.joints.resize(e.joint_count);
      for (int j = 0; j < e.joint_count; ++j) {
        step.joints[j] = ReadLe<double>(joints, (t * e.joint_count + j) * sizeof(double));
      }
    }
  }
  return demo;
}

pointcloud::SegmentedPointCloud ReadFrame(const fs::path& dir, const Manifest& manifest,
                                          std::size_t index, int frame) {
  const ManifestEntry& e = EntryAt(manifest, index);
  if (frame < 0 || frame >= e.steps) {
    throw Error(ErrorCode::kIndexOutOfRange, "frame " + std::to_string(frame) + " of " +
                                                 std::to_string(e.steps));
  }
  const std::size_t n = manifest.cloud_size;
  const fs::path path = dir / e.dir / "clouds.bin";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<uint8_t> bytes(n * kPointStride);
  in.seekg(static_cast<std::streamoff>(frame * n * kPointStride));
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw Error(ErrorCode::kParseError, path.string() + " is truncated");
  }
  pointcloud::SegmentedPointCloud cloud;
  cloud.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t offset = i * kPointStride;
    const float label = ReadLe<float>(bytes, offset + 12);
    if (!(label >= 0.0f && label < pointcloud::kLabelCount)) {
      throw Error(ErrorCode::kParseError, "bad label in " + e.dir);
    }
    cloud.Append(Eigen::Vector3f(ReadLe<float>(bytes, offset), ReadLe<float>(bytes, offset + 4),
                                 ReadLe<float>(bytes, offset + 8)),
                 static_cast<pointcloud::Label>(static_cast<int>(label)));
  }
  return cloud;
}

}  // namespace demoforge::demo
