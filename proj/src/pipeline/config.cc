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

#include "demoforge/pipeline/config.h"

#include <algorithm>

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"

namespace demoforge::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kDegToRad = M_PI / 180.0;

[[noreturn]] void Fail(const std::string& message) { throw Error(ErrorCode::kConfigError, message); }

fs::path Resolve(const fs::path& base, const json& value) {
  const fs::path p(value.get<std::string>());
  return p.is_absolute() ? p : base / p;
}

Eigen::Vector3d Vec3(const json& value) {
  const auto v = value.get<std::vector<double>>();
  if (v.size() != 3) Fail("expected a 3-vector");
  return Eigen::Vector3d(v[0], v[1], v[2]);
}

std::vector<fs::path> ListMeshes(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir, ec)) {
    const std::string ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".obj" || ext == ".ply")) out.push_back(entry.path());
  }
  if (ec) Fail("cannot list " + dir.string() + ": " + ec.message());
  return out;
}

void RequireExists(const fs::path& path, const char* what) {
  if (!fs::exists(path)) Fail(std::string(what) + " not found: " + path.string());
}

}  // namespace

RunConfig RunConfigFromJson(const json& doc, const fs::path& base) {
  RunConfig c;
  try {
    if (doc.contains("source")) {
      const json& s = doc.at("source");
      if (s.contains("dataset")) c.source_dataset = Resolve(base, s.at("dataset"));
      c.source_demo_index = s.value("demo_index", 0);
      if (s.contains("annotations")) c.source_annotations = Resolve(base, s.at("annotations"));
      if (s.contains("mesh")) c.source_mesh = Resolve(base, s.at("mesh"));
    }
    if (doc.contains("meshes")) {
      for (const json& m : doc.at("meshes")) c.meshes.push_back(Resolve(base, m));
    }
    if (doc.contains("mesh_dir")) {
      for (const fs::path& p : ListMeshes(Resolve(base, doc.at("mesh_dir")))) c.meshes.push_back(p);
    }
    std::sort(c.meshes.begin(), c.meshes.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    if (doc.contains("overrides")) c.overrides = Resolve(base, doc.at("overrides"));
    c.keypoint_dir = doc.contains("keypoint_dir") ? Resolve(base, doc.at("keypoint_dir"))
                                                  : base / "keypoints";
    if (doc.contains("split")) {
      c.split_meshes = doc.at("split").at("meshes").get<int>();
      c.demos_per_mesh = doc.at("split").at("demos_per_mesh").get<int>();
    } else {
      c.split_meshes = static_cast<int>(c.meshes.size());
    }
    if (doc.contains("sampler")) c.sampler = transfer::PoseSamplerFromJson(doc.at("sampler"));
    const std::string mode = doc.value("mode", "goal_anchored");
    if (mode == "goal_anchored") {
      c.mode = transfer::SkillMode::kGoalAnchored;
    } else if (mode == "literal") {
      c.mode = transfer::SkillMode::kLiteral;
    } else {
      Fail("mode must be goal_anchored or literal, got '" + mode + "'");
    }
    if (doc.contains("transition")) {
      c.transition_step = doc.at("transition").value("step", c.transition_step);
      c.transition_min_steps = doc.at("transition").value("min_steps", c.transition_min_steps);
    }
    c.seed = doc.value("seed", uint64_t{0});
    c.output = doc.contains("output") ? Resolve(base, doc.at("output")) : base / "out";
    c.jobs = doc.value("jobs", 1);
    c.cloud_size = doc.value("cloud_size", std::size_t{1024});
    c.dbscan_eps = doc.value("dbscan_eps", c.dbscan_eps);
    c.dbscan_min_pts = doc.value("dbscan_min_pts", c.dbscan_min_pts);
    if (doc.contains("workspace")) {
      c.workspace.min = Vec3(doc.at("workspace").at("min"));
      c.workspace.max = Vec3(doc.at("workspace").at("max"));
    }
    if (doc.contains("rig")) {
      const json& r = doc.at("rig");
      c.rig.views = r.value("views", c.rig.views);
      if (r.contains("elevation_deg")) c.rig.elevation = r.at("elevation_deg").get<double>() * kDegToRad;
      c.rig.radius_factor = r.value("radius_factor", c.rig.radius_factor);
      c.rig.resolution = r.value("resolution", c.rig.resolution);
      c.rig.focal = r.value("focal", c.rig.focal);
      c.rig.neighbors = r.value("neighbors", c.rig.neighbors);
      c.rig.min_weight = r.value("min_weight", c.rig.min_weight);
      c.rig.visibility_pixels = r.value("visibility_pixels", c.rig.visibility_pixels);
    }
    if (doc.contains("backend")) {
      const json& b = doc.at("backend");
      const std::string type = b.value("type", "geometric");
      if (type == "geometric") {
        c.backend.type = BackendType::kGeometric;
      } else if (type == "files") {
        c.backend.type = BackendType::kFiles;
        c.backend.dir = Resolve(base, b.at("dir"));
      } else if (type == "service") {
        c.backend.type = BackendType::kService;
        c.backend.url = b.at("url").get<std::string>();
      } else {
        Fail("unknown backend type '" + type + "'");
      }
    }
    if (doc.contains("scene_cameras")) c.scene_cameras = Resolve(base, doc.at("scene_cameras"));
    c.scene_resolution = doc.value("scene_resolution", c.scene_resolution);
    if (doc.contains("chain")) c.chain = Resolve(base, doc.at("chain"));
    if (doc.contains("robot_links")) {
      for (const json& l : doc.at("robot_links")) {
        RobotLinkConfig link;
        link.mesh = Resolve(base, l.at("mesh"));
        const json& frame = l.value("frame", json("ee"));
        if (frame.is_string()) {
          if (frame.get<std::string>() != "ee") Fail("robot link frame must be \"ee\" or an index");
          link.frame = -1;
        } else {
          link.frame = frame.get<int>();
        }
        c.robot_links.push_back(link);
      }
    }
    if (doc.contains("collision_floor_z")) c.collision_floor_z = doc.at("collision_floor_z").get<double>();
  } catch (const json::exception& e) {
    Fail(std::string("config: ") + e.what());
  }
  Validate(c);
  return c;
}

void Validate(const RunConfig& c) {
  if (c.cloud_size < 64) Fail("cloud_size must be >= 64");
  if (c.jobs < 1) Fail("jobs must be >= 1");
  if (c.split_meshes < 0 || c.demos_per_mesh < 0) Fail("split counts must be >= 0");
  if (!(c.transition_step > 0.0) || c.transition_min_steps < 2) Fail("bad transition parameters");
  if (!(c.dbscan_eps > 0.0) || c.dbscan_min_pts < 1) Fail("bad DBSCAN parameters");
  if (c.scene_resolution < 8) Fail("scene_resolution must be >= 8");
  if (!(c.workspace.min.array() < c.workspace.max.array()).all()) Fail("workspace min must be < max");
  correspondence::Validate(c.rig);
  transfer::Validate(c.sampler);
  for (const fs::path& m : c.meshes) RequireExists(m, "mesh");
  if (!c.source_dataset.empty()) RequireExists(c.source_dataset, "source dataset");
  if (!c.source_annotations.empty()) RequireExists(c.source_annotations, "annotation file");
  if (!c.source_mesh.empty()) RequireExists(c.source_mesh, "source mesh");
  if (c.overrides) RequireExists(*c.overrides, "override file");
  if (c.scene_cameras) RequireExists(*c.scene_cameras, "scene camera file");
  if (c.chain) RequireExists(*c.chain, "chain file");
  for (const RobotLinkConfig& l : c.robot_links) RequireExists(l.mesh, "robot link mesh");
  if (c.backend.type == BackendType::kFiles) RequireExists(c.backend.dir, "descriptor directory");
}

RunConfig LoadRunConfig(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(ReadFileText(path));
  } catch (const json::exception& e) {
    Fail(path.string() + ": " + e.what());
  } catch (const Error& e) {
    Fail(e.what());
  }
  return RunConfigFromJson(doc, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

}  // namespace demoforge::pipeline
