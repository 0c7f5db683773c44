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

#include "demoforge/synth/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"
#include "demoforge/demo/dataset.h"
#include "demoforge/mesh/canonicalize.h"
#include "demoforge/mesh/mesh_io.h"
#include "demoforge/mesh/primitives.h"
#include "demoforge/pipeline/assets.h"
#include "demoforge/pipeline/robot_model.h"
#include "demoforge/pipeline/scene.h"
#include "demoforge/pointcloud/assemble.h"

namespace demoforge::synth {
namespace {

namespace fs = std::filesystem;
using geometry::Pose;
using geometry::Quat;

constexpr double kCupRadius = 0.04;
constexpr double kCupHeight = 0.08;
// Grasp point inward from the handle rim, roughly the tube center.
constexpr double kGraspDepth = 0.006;
// Body base plane, as a fraction of the vertical radius below the center.
constexpr double kBaseCut = 0.6;

const pointcloud::Workspace kSourceWorkspace{{0.1, -0.5, 0.005}, {0.9, 0.5, 0.6}};

struct TeapotParts {
  std::vector<mesh::TriMesh> parts;
  mesh::TriMesh handle;
  Eigen::Vector3d affording;
  Eigen::Vector3d function;
};

TeapotParts BuildParts(const std::string& id, const TeapotParams& p) {
  const Eigen::Vector3d& r = p.body_radii;
  std::vector<mesh::TriMesh> parts;
  // Ellipsoid body standing on a flat base.
  const mesh::TriMesh round = mesh::Ellipsoid(id, r, 32, 16);
  std::vector<Eigen::Vector3d> body = round.vertices();
  for (Eigen::Vector3d& v : body) v.z() = std::max(v.z(), -kBaseCut * r.z());
  parts.emplace_back(id, std::move(body), round.faces());
  parts.push_back(mesh::Transformed(mesh::Ellipsoid(id, {0.03, 0.03, 0.01}, 24, 8),
                                    Pose::FromTranslation(0.0, 0.0, r.z())));
  parts.push_back(mesh::Transformed(mesh::Ellipsoid(id, {0.01, 0.01, 0.012}, 12, 6),
                                    Pose::FromTranslation(0.0, 0.0, r.z() + 0.016)));
  parts.push_back(mesh::Transformed(mesh::Ellipsoid(id, {0.014, 0.006, 0.014}, 12, 6),
                                    Pose::FromTranslation(0.0, r.y(), 0.0)));

  const Eigen::Vector3d spout_base(0.8 * r.x(), 0.0, 0.1 * r.z());
  const Quat spout_rotation = Quat::RotY(M_PI / 2.0 - p.spout_tilt);
  parts.push_back(mesh::Transformed(
      mesh::Frustum(id, p.spout_base_radius, p.spout_tip_radius, p.spout_length, 16),
      Pose(spout_rotation, spout_base)));
  // Lower lip of the spout opening.
  const Eigen::Vector3d tip = spout_base + spout_rotation.Rotate({p.spout_tip_radius, 0.0, p.spout_length});

  const Eigen::Vector3d handle_center(-(r.x() + p.handle_major - 0.012), 0.0, p.handle_height);
  mesh::TriMesh handle =
      mesh::Transformed(mesh::Torus(id + "_handle", p.handle_major, p.handle_minor, 24, 12),
                        Pose(Quat::RotX(M_PI / 2.0), handle_center));
  parts.push_back(handle);
  // Outer rim of the handle, visible from the side in either canonical orientation.
  const Eigen::Vector3d rim = handle_center - Eigen::Vector3d(p.handle_major + p.handle_minor, 0.0, 0.0);
  return {std::move(parts), std::move(handle), rim, tip};
}

// Rotation by `angle` about `axis` through `pivot`, applied on the left.
Pose RotateAbout(const Eigen::Vector3d& pivot, const Eigen::Vector3d& axis, double angle) {
  const Quat q = Quat::FromAxisAngle(axis, angle);
  return Pose(q, pivot - q.Rotate(pivot));
}

Quat RandomRotation(Rng& rng) {
  Eigen::Vector4d v;
  for (int i = 0; i < 4; ++i) v[i] = rng.Gaussian();
  v.normalize();
  return Quat(v[0], v[1], v[2], v[3]);
}

}  // namespace

TeapotParams RandomTeapotParams(Rng& rng) {
  TeapotParams p;
  p.body_radii = {rng.Uniform(0.064, 0.070), rng.Uniform(0.058, 0.064), rng.Uniform(0.030, 0.036)};
  p.spout_length = rng.Uniform(0.06, 0.08);
  p.spout_base_radius = rng.Uniform(0.011, 0.014);
  p.spout_tip_radius = rng.Uniform(0.005, 0.007);
  p.spout_tilt = rng.Uniform(35.0, 45.0) * M_PI / 180.0;
  p.handle_major = rng.Uniform(0.022, 0.027);
  p.handle_minor = rng.Uniform(0.005, 0.007);
  p.handle_height = rng.Uniform(-0.008, 0.008);
  return p;
}

mesh::TriMesh RawTeapot(const std::string& id, const TeapotParams& params, const Pose& raw_pose) {
  return mesh::Transformed(mesh::Merge(id, BuildParts(id, params).parts), raw_pose);
}

Teapot MakeTeapot(const std::string& id, const TeapotParams& params, const Pose& raw_pose) {
  TeapotParts parts = BuildParts(id, params);
  const mesh::TriMesh raw = mesh::Transformed(mesh::Merge(id, parts.parts), raw_pose);
  mesh::TriMesh canonical = mesh::CanonicalizePca(raw);
  const Pose& to_canonical = canonical.canonical_pose();
  mesh::TriMesh handle = mesh::Transformed(parts.handle, to_canonical);
  demo::KeypointAnnotation keypoints{to_canonical.Apply(parts.affording),
                                     to_canonical.Apply(parts.function)};
  const geometry::Quat upright = to_canonical.rotation().Inverse();
  return {std::move(canonical), std::move(handle), keypoints, upright};
}

mesh::TriMesh GoalCup() { return mesh::Cup("cup", kCupRadius, kCupHeight, 0.004, 32); }

Pose GoalCupPose() { return Pose::FromTranslation(0.60, 0.10, 0.0); }

SourceDemo MakeSourceDemo(const Teapot& teapot, const SourceDemoParams& params) {
  if (!(params.t_grasp + 2 < params.skill_begin && params.skill_begin < params.skill_end &&
        params.skill_end < params.steps && params.t_grasp > 1)) {
    throw Error(ErrorCode::kInvalidArgument, "inconsistent source demo timing");
  }
  const Eigen::Vector3d& x_fun = teapot.keypoints.function_point;
  const Pose t_init(params.rotation,
                    Eigen::Vector3d(params.object_xy.x(), params.object_xy.y(),
                                    pipeline::RestingHeight(teapot.mesh, params.rotation)));
  const Eigen::Vector3d aff_world = t_init.Apply(teapot.keypoints.affording_point);

  // Fingers close across the handle, the spout direction in the plane.
  Eigen::Vector3d spout_dir = t_init.Apply(x_fun) - aff_world;
  spout_dir.z() = 0.0;
  spout_dir.normalize();
  const double yaw = std::atan2(spout_dir.y(), spout_dir.x());
  const Quat down = Quat::RotZ(yaw) * Quat::RotX(M_PI);
  const Pose grasp(down, aff_world + kGraspDepth * spout_dir);
  const Pose home(Quat::RotX(M_PI), Eigen::Vector3d(0.3, 0.0, 0.35));
  const Pose pregrasp = geometry::ShiftTranslation(grasp, {0.0, 0.0, 0.08});

  const Eigen::Vector3d tip_target =
      GoalCupPose().Apply(Eigen::Vector3d(0.0, 0.0, kCupHeight + params.pour_height));
  const Pose object_pour(params.rotation, tip_target - params.rotation.Rotate(x_fun));
  const Pose grasp_pour = object_pour * t_init.Inverse() * grasp;
  const Eigen::Vector3d pour_axis = Eigen::Vector3d::UnitZ().cross(spout_dir);

  const int t_g = params.t_grasp;
  const int t_s = params.skill_begin;
  const int t_e = params.skill_end;
  const int n = params.steps;
  std::vector<Pose> poses(n);
  std::vector<double> gripper(n, 1.0);
  const int approach_end = t_g / 2 + 4;
  for (int t = 0; t < n; ++t) {
    if (t <= approach_end) {
      poses[t] = geometry::Interpolate(home, pregrasp, static_cast<double>(t) / approach_end);
    } else if (t <= t_g) {
      poses[t] = geometry::Interpolate(pregrasp, grasp,
                                       static_cast<double>(t - approach_end) / (t_g - approach_end));
    } else if (t <= t_g + 1) {
      poses[t] = grasp;
    } else if (t < t_s) {
      poses[t] = geometry::Interpolate(grasp, grasp_pour,
                                       static_cast<double>(t - t_g - 1) / (t_s - t_g - 1));
    } else if (t <= t_e) {
      const double angle = params.pour_angle * (t - t_s) / (t_e - t_s);
      poses[t] = RotateAbout(tip_target, pour_axis, angle) * grasp_pour;
    } else {
      const Pose lifted = geometry::ShiftTranslation(grasp_pour, {0.0, 0.0, 0.08});
      poses[t] = geometry::Interpolate(poses[t_e], lifted, static_cast<double>(t - t_e) / (n - 1 - t_e));
    }
    if (t >= t_g) gripper[t] = 0.0;
  }

  SourceDemo out;
  demo::Demonstration& d = out.demo;
  d.t_grasp = t_g;
  d.skill_range = {t_s, t_e};
  d.object_pose = t_init;
  d.keypoints = teapot.keypoints;
  d.mesh_id = teapot.mesh.id();
  d.seed = params.seed;
  d.steps.resize(n);
  for (int t = 0; t < n; ++t) {
    d.steps[t].ee_pose = poses[t];
    d.steps[t].gripper = gripper[t];
  }

  if (params.render_clouds) {
    const pipeline::RobotModel robot = pipeline::DefaultRobotModel();
    const std::vector<render::Camera> cameras = pipeline::DefaultSceneCameras(256);
    const mesh::TriMesh cup = GoalCup();
    const Pose grasp_to_object = grasp.Inverse() * t_init;
    Rng rng(params.seed);
    for (int t = 0; t < n; ++t) {
      const Pose object = t < t_g ? t_init : poses[t] * grasp_to_object;
      std::vector<render::SceneItem> items =
          pipeline::RobotItems(robot, poses[t], gripper[t], Eigen::VectorXd());
      items.push_back({&teapot.mesh, object, pipeline::kObjectInstance});
      items.push_back({&cup, GoalCupPose(), pipeline::kGoalInstance});
      pointcloud::SegmentedPointCloud cloud = pipeline::RenderCloud(items, cameras, &kSourceWorkspace);
      // Segmentation noise: isolated goal-labelled points and a clutter patch.
      for (int i = 0; i < 6; ++i) {
        cloud.Append(Eigen::Vector3f(rng.Uniform(0.15, 0.35), rng.Uniform(-0.45, 0.45),
                                     rng.Uniform(0.01, 0.4)),
                     pointcloud::Label::kGoal);
      }
      for (int i = 0; i < 150; ++i) {
        cloud.Append(Eigen::Vector3f(rng.Uniform(0.70, 0.76), rng.Uniform(-0.34, -0.28),
                                     rng.Uniform(0.01, 0.03)),
                     pointcloud::Label::kOther);
      }
      d.steps[t].cloud = pointcloud::ResizeCloud(cloud, params.cloud_size);
    }
  }

  out.annotation.mesh_id = d.mesh_id;
  out.annotation.skill_range = d.skill_range;
  out.annotation.object_pose = t_init;
  out.annotation.keypoints = d.keypoints;
  out.annotation.t_grasp = t_g;
  return out;
}

nlohmann::json DefaultRunConfig(const SynthOptions& options, const Quat& base_rotation) {
  return {
      {"source",
       {{"dataset", "source/dataset"},
        {"demo_index", 0},
        {"annotations", "source/annotation.json"},
        {"mesh", "meshes/teapot_000.obj"}}},
      {"mesh_dir", "meshes"},
      {"keypoint_dir", "keypoints"},
      {"split", {{"meshes", options.meshes}, {"demos_per_mesh", options.demos_per_mesh}}},
      {"sampler", {{"x", {0.35, 0.55}}, {"y", {-0.2, 0.0}}, {"yaw_deg", {0.0, 180.0}},
        {"z", 0.0},
        {"base_rotation", {base_rotation.w(), base_rotation.x(), base_rotation.y(), base_rotation.z()}}}},
      {"mode", "goal_anchored"},
      {"transition", {{"step", 0.01}, {"min_steps", 5}}},
      {"seed", options.seed},
      {"output", "out"},
      {"jobs", 1},
      {"cloud_size", 1024},
      {"dbscan_eps", 0.01},
      {"dbscan_min_pts", 10},
      {"workspace", {{"min", {0.1, -0.5, 0.005}}, {"max", {0.9, 0.5, 0.6}}}},
      {"scene_resolution", 128},
      {"backend", {{"type", "geometric"}}},
  };
}

SynthLayout WriteSynthAssets(const fs::path& dir, const SynthOptions& options) {
  if (options.meshes < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one mesh");
  SynthLayout layout;
  layout.mesh_dir = dir / "meshes";
  fs::create_directories(layout.mesh_dir);
  fs::create_directories(dir / "source");

  Rng rng(options.seed);
  Quat upright;
  for (int i = 0; i < options.meshes; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "teapot_%03d", i);
    const TeapotParams params = RandomTeapotParams(rng);
    const Pose raw_pose(RandomRotation(rng),
                        Eigen::Vector3d(rng.Uniform(-0.5, 0.5), rng.Uniform(-0.5, 0.5),
                                        rng.Uniform(-0.5, 0.5)));
    const fs::path path = layout.mesh_dir / (std::string(name) + ".obj");
    mesh::WriteObj(RawTeapot(name, params, raw_pose), path);
    if (i == 0) {
      layout.source_mesh = path;
      // Keypoints come from the construction, the mesh from the file as the
      // pipeline will load it.
      Teapot teapot = MakeTeapot(name, params, raw_pose);
      teapot.mesh = pipeline::LoadCanonicalMesh(path, {});
      upright = teapot.upright;
      SourceDemoParams source_params = options.source;
      source_params.rotation = upright;
      const SourceDemo source = MakeSourceDemo(teapot, source_params);
      layout.source_dataset = dir / "source" / "dataset";
      const demo::Demonstration demos[] = {source.demo};
      demo::WriteDataset(demos, layout.source_dataset, options.source.cloud_size);
      layout.annotation = dir / "source" / "annotation.json";
      WriteFileText(layout.annotation, demo::AnnotationToJson(source.annotation).dump(2) + "\n");
    }
  }
  layout.config = dir / "config.json";
  WriteFileText(layout.config, DefaultRunConfig(options, upright).dump(2) + "\n");
  return layout;
}

}  // namespace demoforge::synth
