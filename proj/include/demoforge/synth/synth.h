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

#ifndef DEMOFORGE_SYNTH_SYNTH_H_
#define DEMOFORGE_SYNTH_SYNTH_H_

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

#include "demoforge/common/random.h"
#include "demoforge/demo/annotations.h"
#include "demoforge/demo/demonstration.h"
#include "demoforge/geometry/pose.h"
#include "demoforge/mesh/tri_mesh.h"
#include "demoforge/pointcloud/point_cloud.h"

// Procedural assets for tests, benchmarks and demo runs: a family of
// teapot-like pouring vessels, a goal cup and a scripted pouring demo.
namespace demoforge::synth {

// Dimensions in meters, angles in radians. Raw frame: body centered at the
// origin, z up, spout towards +x, handle towards -x, a side boss at +y.
struct TeapotParams {
  Eigen::Vector3d body_radii{0.067, 0.061, 0.033};
  double spout_length = 0.07;
  double spout_base_radius = 0.012;
  double spout_tip_radius = 0.006;
  double spout_tilt = 40.0 * M_PI / 180.0;  // elevation above the xy plane
  double handle_major = 0.025;
  double handle_minor = 0.006;
  double handle_height = 0.0;  // handle center z
};

TeapotParams RandomTeapotParams(Rng& rng);

struct Teapot {
  mesh::TriMesh mesh;    // canonical frame
  mesh::TriMesh handle;  // handle part alone, canonical frame
  demo::KeypointAnnotation keypoints;  // canonical frame
  // Takes the canonical frame back to the built orientation: base down,
  // spout towards +x.
  geometry::Quat upright;
};

// Builds the raw mesh, moves it by raw_pose (to exercise canonicalization)
// and canonicalizes it. Keypoints: outer rim of the handle and the lower lip of the spout.
Teapot MakeTeapot(const std::string& id, const TeapotParams& params,
                  const geometry::Pose& raw_pose = geometry::Pose::Identity());
// The raw mesh before canonicalization, posed by raw_pose.
mesh::TriMesh RawTeapot(const std::string& id, const TeapotParams& params,
                        const geometry::Pose& raw_pose = geometry::Pose::Identity());

mesh::TriMesh GoalCup();
// Where the cup stands in the source scene.
geometry::Pose GoalCupPose();

struct SourceDemoParams {
  Eigen::Vector2d object_xy{0.45, -0.12};
  // Object orientation at rest (canonical -> world); usually Teapot::upright.
  geometry::Quat rotation;
  int steps = 100;
  int t_grasp = 30;
  int skill_begin = 55;
  int skill_end = 79;
  double pour_angle = 45.0 * M_PI / 180.0;
  double pour_height = 0.16;   // spout tip height over the cup rim at the skill start
  std::size_t cloud_size = 4096;
  bool render_clouds = true;
  uint64_t seed = 7;
};

struct SourceDemo {
  demo::Demonstration demo;
  demo::Annotation annotation;
};

// Pick the vessel by the handle from above, carry it over the cup, pour by
// rotating about the spout tip, and lift away. Clouds are rendered from
// the default scene cameras with labels robot / object / goal, plus
// stray goal-labelled points and an unrelated cluster.
SourceDemo MakeSourceDemo(const Teapot& teapot, const SourceDemoParams& params);

struct SynthLayout {
  std::filesystem::path mesh_dir;
  std::filesystem::path source_mesh;
  std::filesystem::path source_dataset;
  std::filesystem::path annotation;
  std::filesystem::path config;
};

struct SynthOptions {
  int meshes = 100;
  int demos_per_mesh = 10;
  uint64_t seed = 1;
  SourceDemoParams source;
};

// Writes meshes/teapot_<i>.obj (raw frames, randomly posed), the source
// dataset, its annotation and a run config into dir. teapot_000 is the
// source object.
SynthLayout WriteSynthAssets(const std::filesystem::path& dir, const SynthOptions& options);

// Run config matching WriteSynthAssets; paths relative to dir. The pose
// sampler stands meshes up with base_rotation.
nlohmann::json DefaultRunConfig(const SynthOptions& options, const geometry::Quat& base_rotation);

}  // namespace demoforge::synth

#endif  // DEMOFORGE_SYNTH_SYNTH_H_
