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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "demoforge/common/error.h"
#include "demoforge/common/random.h"
#include "demoforge/demo/annotations.h"
#include "demoforge/demo/dataset.h"
#include "demoforge/mesh/mesh_io.h"
#include "demoforge/mesh/primitives.h"
#include "demoforge/mesh/queries.h"
#include "demoforge/pipeline/cli.h"
#include "demoforge/pipeline/commands.h"
#include "demoforge/pipeline/config.h"
#include "demoforge/pointcloud/point_cloud.h"
#include "demoforge/synth/synth.h"
#include "test_util.h"

#include "json.hpp"

namespace demoforge::pipeline {
namespace {

namespace fs = std::filesystem;
using geometry::Pose;
using nlohmann::json;

std::string ReadBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

json ReadJson(const fs::path& path) { return json::parse(ReadBytes(path)); }

void WriteJsonFile(const json& doc, const fs::path& path) {
  std::ofstream(path) << doc.dump(2);
}

// Three synthetic teapots with keypoints transferred once for all tests.
class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir("pipeline");
    synth::SynthOptions options;
    options.meshes = 3;
    options.demos_per_mesh = 2;
    options.seed = 11;
    options.source.render_clouds = true;
    layout_ = synth::WriteSynthAssets(dir_->path(), options);
    config_ = new RunConfig(LoadRunConfig(layout_.config));
    correspond_ = new CorrespondReport(CmdCorrespond(*config_, config_->keypoint_dir));
  }
  static void TearDownTestSuite() {
    delete correspond_;
    delete config_;
    delete dir_;
  }

  static testing::TempDir* dir_;
  static synth::SynthLayout layout_;
  static RunConfig* config_;
  static CorrespondReport* correspond_;
};

testing::TempDir* PipelineTest::dir_ = nullptr;
synth::SynthLayout PipelineTest::layout_;
RunConfig* PipelineTest::config_ = nullptr;
CorrespondReport* PipelineTest::correspond_ = nullptr;

void ExpectConfigError(const json& doc, const fs::path& base) {
  try {
    Validate(RunConfigFromJson(doc, base));
    ADD_FAILURE() << doc.dump();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError) << e.what();
  }
}

TEST_F(PipelineTest, ConfigLoadsAndRejectsBadValues) {
  EXPECT_EQ(config_->meshes.size(), 3u);
  EXPECT_EQ(config_->meshes.front().filename(), "teapot_000.obj");
  EXPECT_EQ(config_->split_meshes, 3);
  EXPECT_EQ(config_->demos_per_mesh, 2);
  const json base = ReadJson(layout_.config);

  json small = base;
  small["cloud_size"] = 32;
  ExpectConfigError(small, dir_->path());
  json no_jobs = base;
  no_jobs["jobs"] = 0;
  ExpectConfigError(no_jobs, dir_->path());
  json missing = base;
  missing["source"]["dataset"] = "nowhere";
  ExpectConfigError(missing, dir_->path());
  json inverted = base;
  inverted["sampler"]["x"] = {0.5, 0.4};
  ExpectConfigError(inverted, dir_->path());
  json bad_mode = base;
  bad_mode["mode"] = "replay";
  ExpectConfigError(bad_mode, dir_->path());

  const fs::path broken = dir_->path() / "broken.json";
  std::ofstream(broken) << "{ not json";
  try {
    LoadRunConfig(broken);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
  }
}

TEST_F(PipelineTest, CanonicalizeIsPoseInvariantAndReportsDegenerateMeshes) {
  testing::TempDir tmp("canon");
  const fs::path in = tmp.path() / "in";
  fs::create_directories(in);
  const mesh::TriMesh raw = mesh::LoadMesh(config_->meshes[1]);
  Rng rng(3);
  mesh::WriteObj(mesh::WithId(raw, "a"), in / "a.obj");
  mesh::WriteObj(mesh::WithId(mesh::Transformed(raw, testing::RandomPose(rng, 0.3)), "b"), in / "b.obj");
  mesh::WriteObj(mesh::Ellipsoid("ball", {0.1, 0.1, 0.1}, 32, 16), in / "ball.obj");

  RunConfig config = *config_;
  config.meshes = {in / "a.obj", in / "b.obj", in / "ball.obj"};
  const fs::path out = tmp.path() / "out";
  const CanonicalizeReport report = CmdCanonicalize(config, out);
  ASSERT_EQ(report.written, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(report.failures.size(), 1u);
  EXPECT_EQ(report.failures[0].mesh_id, "ball");
  EXPECT_EQ(report.failures[0].error, "DegenerateCovariance");
  EXPECT_TRUE(fs::exists(out / "canonicalize_report.json"));

  const mesh::TriMesh a = mesh::LoadMesh(out / "a.obj");
  const mesh::TriMesh b = mesh::LoadMesh(out / "b.obj");
  ASSERT_EQ(a.vertex_count(), b.vertex_count());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.vertex_count(); ++i) {
    worst = std::max(worst, (a.vertex(i) - b.vertex(i)).norm());
  }
  EXPECT_LT(worst, 1e-5);
}

TEST_F(PipelineTest, CorrespondWritesResultsForEveryMesh) {
  EXPECT_EQ(correspond_->backend, "geometric");
  EXPECT_EQ(correspond_->succeeded.size(), 3u);
  EXPECT_TRUE(correspond_->failures.empty());
  const demo::Annotation annotation = demo::LoadAnnotation(config_->source_annotations);
  for (const std::string& id : correspond_->succeeded) {
    for (const auto kind : {correspondence::KeypointKind::kAffording, correspondence::KeypointKind::kFunction}) {
      const fs::path path = correspondence::ResultPath(config_->keypoint_dir, id, kind);
      ASSERT_TRUE(fs::exists(path)) << path;
      const correspondence::MatchResult r = correspondence::ResultFromJson(ReadJson(path));
      EXPECT_GT(r.confidence, 0.0);
      EXPECT_LE(r.confidence, 1.0);
      if (id == annotation.mesh_id) {
        const Eigen::Vector3d& truth = kind == correspondence::KeypointKind::kAffording
                                           ? annotation.keypoints.affording_point
                                           : annotation.keypoints.function_point;
        EXPECT_LT((r.keypoint - truth).norm(), 0.005) << id;
      }
    }
  }
  EXPECT_TRUE(fs::exists(config_->keypoint_dir / "correspond_report.json"));
}

TEST_F(PipelineTest, CorrespondRecordsPerMeshFailures) {
  testing::TempDir tmp("corr_fail");
  RunConfig config = *config_;
  const fs::path flat = tmp.path() / "flat.obj";
  // Degenerate covariance: a single triangle cannot be canonicalized.
  std::ofstream(flat) << "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n";
  config.meshes = {config_->meshes[0], flat};
  const CorrespondReport report = CmdCorrespond(config, tmp.path() / "kp");
  EXPECT_EQ(report.succeeded.size(), 1u);
  ASSERT_EQ(report.failures.size(), 1u);
  EXPECT_EQ(report.failures[0].mesh_id, "flat");
}

TEST_F(PipelineTest, IdentitySamplerReproducesSource) {
  RunConfig config = *config_;
  config.split_meshes = 1;
  config.demos_per_mesh = 3;
  const GenerationAssets assets = BuildAssets(config);
  const Pose& pose = assets.source.object_pose;
  transfer::PoseSampler& s = config.sampler;
  s.x_min = s.x_max = pose.translation().x();
  s.y_min = s.y_max = pose.translation().y();
  s.yaw_min = s.yaw_max = 0.0;
  s.base_rotation = pose.rotation();
  for (int k = 0; k < 3; ++k) {
    const demo::Demonstration d = GenerateTask(assets, config, 0, k, false);
    EXPECT_LT(testing::PoseGap(d.object_pose, pose), 1e-9);
    const demo::Demonstration& src = assets.source;
    const int grasp_begin = d.t_grasp - src.t_grasp;
    ASSERT_GE(grasp_begin, 0);
    for (int t = 0; t <= src.t_grasp; ++t) {
      EXPECT_LT(testing::PoseGap(d.steps[grasp_begin + t].ee_pose, src.steps[t].ee_pose), 1e-9) << t;
    }
    ASSERT_EQ(d.skill_range.end - d.skill_range.begin, src.skill_range.end - src.skill_range.begin);
    for (int t = src.skill_range.begin; t <= src.skill_range.end; ++t) {
      const int g = d.skill_range.begin + t - src.skill_range.begin;
      EXPECT_LT(testing::PoseGap(d.steps[g].ee_pose, src.steps[t].ee_pose), 1e-9) << t;
    }
  }
}

TEST_F(PipelineTest, GenerateIsDeterministicAcrossJobs) {
  testing::TempDir tmp("gen");
  RunConfig config = *config_;
  config.split_meshes = 2;
  config.demos_per_mesh = 2;
  config.cloud_size = 256;
  config.scene_resolution = 64;
  config.output = tmp.path() / "one";
  config.jobs = 1;
  const GenerateReport one = CmdGenerate(config);
  config.output = tmp.path() / "two";
  config.jobs = 2;
  const GenerateReport two = CmdGenerate(config);
  ASSERT_EQ(one.manifest.demos.size(), 4u) << SummaryToJson(one).dump();
  ASSERT_EQ(two.manifest.demos.size(), 4u);
  for (const std::string& file : {"manifest.json", "summary.json"}) {
    EXPECT_EQ(ReadBytes(tmp.path() / "one" / file), ReadBytes(tmp.path() / "two" / file)) << file;
  }
  for (int i = 0; i < 4; ++i) {
    const std::string demo = "demo_" + std::to_string(i);
    for (const std::string& file : {"traj.bin", "clouds.bin"}) {
      const std::string a = ReadBytes(tmp.path() / "one" / demo / file);
      EXPECT_FALSE(a.empty());
      EXPECT_EQ(a, ReadBytes(tmp.path() / "two" / demo / file)) << demo << "/" << file;
    }
  }
  // Samples stay inside the configured ranges.
  for (const demo::ManifestEntry& e : one.manifest.demos) {
    const Eigen::Vector3d p = e.pose.translation();
    EXPECT_GE(p.x(), config.sampler.x_min);
    EXPECT_LE(p.x(), config.sampler.x_max);
    EXPECT_GE(p.y(), config.sampler.y_min);
    EXPECT_LE(p.y(), config.sampler.y_max);
  }

  // Inspect reads back one frame.
  const InspectResult r = CmdInspect(config.output, 1, 0, tmp.path() / "inspect");
  ASSERT_TRUE(fs::exists(r.ply));
  const std::string ply = ReadBytes(r.ply);
  EXPECT_NE(ply.find("element vertex 256"), std::string::npos);
  const pointcloud::SegmentedPointCloud cloud =
      demo::ReadFrame(config.output, two.manifest, 1, 0);
  EXPECT_EQ(r.histogram, pointcloud::LabelHistogram(cloud));
  std::size_t total = 0;
  for (std::size_t c : r.histogram) total += c;
  EXPECT_EQ(total, 256u);
  EXPECT_NE(r.summary.find("stage grasp"), std::string::npos);
  try {
    CmdInspect(config.output, 4, 0, tmp.path() / "inspect");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
}

int RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "demoforge");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  return cli::Run(static_cast<int>(argv.size()), argv.data());
}

TEST_F(PipelineTest, CliExitCodes) {
  testing::TempDir tmp("cli");
  const std::string config = layout_.config.string();
  EXPECT_EQ(RunCli({"canonicalize", "--config", config, "--out", (tmp.path() / "c").string()}),
            cli::kExitOk);
  EXPECT_EQ(RunCli({"generate"}), cli::kExitConfigError);
  EXPECT_EQ(RunCli({"generate", "--config", (tmp.path() / "none.json").string()}),
            cli::kExitConfigError);
  EXPECT_EQ(RunCli({"frobnicate"}), cli::kExitConfigError);

  json bad = ReadJson(layout_.config);
  bad["cloud_size"] = 8;
  const fs::path bad_path = dir_->path() / "bad.json";
  WriteJsonFile(bad, bad_path);
  EXPECT_EQ(RunCli({"generate", "--config", bad_path.string()}), cli::kExitConfigError);

  // Every task fails: no keypoints exist for meshes other than the source.
  const fs::path others = tmp.path() / "others";
  fs::create_directories(others);
  fs::copy_file(config_->meshes[1], others / "teapot_001.obj");
  fs::copy_file(config_->meshes[2], others / "teapot_002.obj");
  fs::create_directories(tmp.path() / "no_keypoints");
  json none = ReadJson(layout_.config);
  none["mesh_dir"] = others.string();
  none["keypoint_dir"] = (tmp.path() / "no_keypoints").string();
  none["split"] = {{"meshes", 2}, {"demos_per_mesh", 1}};
  const fs::path none_path = dir_->path() / "none.json";
  WriteJsonFile(none, none_path);
  EXPECT_EQ(RunCli({"generate", "--config", none_path.string(), "--out", (tmp.path() / "g").string()}),
            cli::kExitTotalFailure);
  EXPECT_TRUE(fs::exists(tmp.path() / "g" / "summary.json"));

  EXPECT_EQ(RunCli({"inspect", "--dataset", config_->source_dataset.string(), "--demo", "7", "--out",
                    (tmp.path() / "i").string()}),
            cli::kExitConfigError);
  EXPECT_EQ(RunCli({"inspect", "--dataset", config_->source_dataset.string(), "--out",
                    (tmp.path() / "i").string()}),
            cli::kExitOk);
}

}  // namespace
}  // namespace demoforge::pipeline
