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

#include <cstring>
#include <filesystem>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"
#include "demoforge/demo/annotations.h"
#include "demoforge/demo/dataset.h"
#include "demoforge/demo/demonstration.h"
#include "demoforge/mesh/primitives.h"
#include "test_util.h"

namespace demoforge::demo {
namespace {

using geometry::Pose;
using pointcloud::Label;
using pointcloud::SegmentedPointCloud;

SegmentedPointCloud RandomCloud(Rng& rng, std::size_t n) {
  SegmentedPointCloud cloud;
  for (std::size_t i = 0; i < n; ++i) {
    cloud.Append(Eigen::Vector3f(rng.Gaussian(), rng.Gaussian(), rng.Gaussian()),
                 static_cast<Label>(rng.Index(pointcloud::kLabelCount)));
  }
  return cloud;
}

Demonstration MakeDemo(uint64_t seed, int steps, std::size_t n, int t_grasp = 30,
                       StepRange skill = {40, 75}) {
  Rng rng(seed);
  Demonstration demo;
  demo.mesh_id = "mesh_" + std::to_string(seed);
  demo.seed = seed;
  demo.t_grasp = t_grasp;
  demo.skill_range = skill;
  demo.object_pose = testing::RandomPose(rng);
  demo.keypoints.affording_point = Eigen::Vector3d(0.1, 0.2, 0.3);
  demo.keypoints.function_point = Eigen::Vector3d(-0.1, 0.0, 0.05);
  for (int t = 0; t < steps; ++t) {
    DemoStep step;
    step.ee_pose = testing::RandomPose(rng);
    step.gripper = t < t_grasp ? 1.0 : 0.0;
    step.cloud = RandomCloud(rng, n);
    demo.steps.push_back(std::move(step));
  }
  return demo;
}

TEST(ExtractGraspTimeTest, CleanCrossing) {
  const std::vector<double> g{1, 1, 1, 0, 0, 0, 0};
  EXPECT_EQ(ExtractGraspTime(g), 3);
}

TEST(ExtractGraspTimeTest, TransientRejected) {
  const std::vector<double> g{1, 0, 1, 0, 0, 0, 0};
  EXPECT_EQ(ExtractGraspTime(g), 3);
}

TEST(ExtractGraspTimeTest, NeverClosed) {
  const std::vector<double> g(10, 1.0);
  try {
    ExtractGraspTime(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoGraspFound);
  }
}

TEST(ExtractGraspTimeTest, ThresholdIsInclusive) {
  const std::vector<double> g{0.51, 0.5, 0.5, 0.5};
  EXPECT_EQ(ExtractGraspTime(g), 1);
  const std::vector<double> short_tail{1, 1, 0, 0};
  EXPECT_THROW(ExtractGraspTime(short_tail), Error);
}

TEST(ExtractGraspTimeTest, MatchesBruteForceOnRandomChannels) {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> g(20);
    for (double& v : g) v = rng.Uniform() < 0.5 ? 0.2 : 0.9;
    int expected = -1;
    for (int t = 0; t + 3 <= 20 && expected < 0; ++t) {
      if (g[t] <= 0.5 && g[t + 1] <= 0.5 && g[t + 2] <= 0.5) expected = t;
    }
    if (expected < 0) {
      EXPECT_THROW(ExtractGraspTime(g), Error);
    } else {
      EXPECT_EQ(ExtractGraspTime(g), expected);
    }
  }
}

TEST(StageTest, PartitionCoversEveryIndexOnce) {
  const int t_grasp = 20;
  const StepRange skill{40, 60};
  int grasp = 0, skill_count = 0, transition = 0;
  for (int t = 0; t < 100; ++t) {
    switch (StageOf(t, t_grasp, skill)) {
      case Stage::kGrasp:
        EXPECT_LE(t, t_grasp);
        ++grasp;
        break;
      case Stage::kSkill:
        EXPECT_TRUE(skill.Contains(t));
        ++skill_count;
        break;
      case Stage::kTransition:
        EXPECT_GT(t, t_grasp);
        EXPECT_FALSE(skill.Contains(t));
        ++transition;
        break;
    }
  }
  EXPECT_EQ(grasp, 21);
  EXPECT_EQ(skill_count, 21);
  EXPECT_EQ(transition, 58);
}

TEST(ValidateDemoTest, AcceptsWellFormedDemo) {
  EXPECT_NO_THROW(Validate(MakeDemo(1, 100, 16)));
}

TEST(ValidateDemoTest, RejectsBrokenOrdering) {
  EXPECT_THROW(Validate(MakeDemo(1, 100, 16, 50, {40, 75})), Error);
  EXPECT_THROW(Validate(MakeDemo(1, 100, 16, 30, {40, 100})), Error);
}

TEST(ValidateDemoTest, RejectsReleaseDuringSkill) {
  Demonstration demo = MakeDemo(1, 100, 16);
  demo.steps[50].gripper = 1.0;
  EXPECT_THROW(Validate(demo), Error);
}

TEST(ValidateDemoTest, RejectsMixedCloudSizes) {
  Demonstration demo = MakeDemo(1, 100, 16);
  demo.steps[3].cloud.Append(Eigen::Vector3f::Zero(), Label::kOther);
  EXPECT_THROW(Validate(demo), Error);
}

nlohmann::json AnnotationDoc(int ts, int te, const Eigen::Vector3d& aff) {
  return {{"mesh_id", "box"},
          {"skill_range", {ts, te}},
          {"object_pose", {1, 0, 0, 0, 0.5, 0.0, 0.0}},
          {"affording_point", {aff.x(), aff.y(), aff.z()}},
          {"function_point", {0.0, 0.0, 0.05}}};
}

TEST(AnnotationTest, ValidFileAccepted) {
  const mesh::TriMesh box = mesh::Box("box", {0.1, 0.1, 0.05});
  const Annotation a = AnnotationFromJson(AnnotationDoc(40, 75, {0.1, 0.0, 0.0}));
  EXPECT_EQ(a.skill_range.begin, 40);
  EXPECT_EQ(a.skill_range.end, 75);
  EXPECT_EQ(a.mesh_id, "box");
  EXPECT_NO_THROW(ValidateAnnotation(a, 100, box));
  EXPECT_FALSE(a.t_grasp.has_value());
}

TEST(AnnotationTest, ReversedRangeIsParseError) {
  try {
    AnnotationFromJson(AnnotationDoc(75, 40, {0.1, 0.0, 0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
}

TEST(AnnotationTest, MissingFieldIsParseError) {
  nlohmann::json doc = AnnotationDoc(40, 75, {0.1, 0.0, 0.0});
  doc.erase("function_point");
  EXPECT_THROW(AnnotationFromJson(doc), Error);
}

TEST(AnnotationTest, RangeBeyondDemoIsRejected) {
  const mesh::TriMesh box = mesh::Box("box", {0.1, 0.1, 0.05});
  const Annotation a = AnnotationFromJson(AnnotationDoc(40, 120, {0.1, 0.0, 0.0}));
  EXPECT_THROW(ValidateAnnotation(a, 100, box), Error);
}

TEST(AnnotationTest, OffSurfaceKeypointRejected) {
  const mesh::TriMesh box = mesh::Box("box", {0.1, 0.1, 0.05});
  // Face x = 0.1; the point sits 10 cm outside it.
  const Annotation a = AnnotationFromJson(AnnotationDoc(40, 75, {0.2, 0.0, 0.0}));
  try {
    ValidateAnnotation(a, 100, box);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kKeypointOffSurface);
  }
  // 1.5 cm off the surface is tolerated.
  const Annotation near = AnnotationFromJson(AnnotationDoc(40, 75, {0.115, 0.0, 0.0}));
  EXPECT_NO_THROW(ValidateAnnotation(near, 100, box));
}

TEST(AnnotationTest, JsonRoundTrip) {
  nlohmann::json doc = AnnotationDoc(40, 75, {0.1, 0.0, 0.0});
  doc["t_grasp"] = 12;
  const Annotation a = AnnotationFromJson(doc);
  const Annotation b = AnnotationFromJson(AnnotationToJson(a));
  EXPECT_EQ(b.t_grasp, 12);
  EXPECT_EQ(b.keypoints.affording_point, a.keypoints.affording_point);
  EXPECT_EQ(geometry::ToArray(b.object_pose), geometry::ToArray(a.object_pose));
}

TEST(DatasetTest, TwoDemosSizesAndManifest) {
  testing::TempDir dir("dataset");
  std::vector<Demonstration> demos{MakeDemo(1, 100, 1024), MakeDemo(2, 100, 1024)};
  const Manifest manifest = WriteDataset(demos, dir.path());
  ASSERT_EQ(manifest.demos.size(), 2u);
  EXPECT_EQ(manifest.cloud_size, 1024u);
  for (const ManifestEntry& e : manifest.demos) {
    EXPECT_EQ(e.steps, 100);
    EXPECT_EQ(std::filesystem::file_size(dir.path() / e.dir / "clouds.bin"), 100u * 1024u * 16u);
    EXPECT_EQ(std::filesystem::file_size(dir.path() / e.dir / "traj.bin"), 100u * 8u * 8u);
  }
  const nlohmann::json doc = nlohmann::json::parse(ReadFileText(dir.path() / "manifest.json"));
  EXPECT_EQ(doc["schema_version"], kSchemaVersion);
  EXPECT_EQ(doc["demos"].size(), 2u);
  EXPECT_EQ(doc["demos"][1]["mesh_id"], "mesh_2");
  EXPECT_EQ(doc["demos"][1]["seed"], 2u);
}

TEST(DatasetTest, RoundTripIsBitExact) {
  testing::TempDir dir("roundtrip");
  std::vector<Demonstration> demos{MakeDemo(3, 20, 64), MakeDemo(4, 25, 64, 5, {10, 20})};
  for (DemoStep& s : demos[1].steps) s.joints = Eigen::VectorXd::Constant(6, 0.25);
  const Manifest manifest = WriteDataset(demos, dir.path());
  const Manifest reread = ReadManifest(dir.path());
  ASSERT_EQ(reread.demos.size(), 2u);
  for (std::size_t k = 0; k < demos.size(); ++k) {
    const Demonstration back = ReadDemo(dir.path(), reread, k);
    ASSERT_EQ(back.size(), demos[k].size());
    EXPECT_EQ(back.t_grasp, demos[k].t_grasp);
    EXPECT_EQ(back.skill_range.begin, demos[k].skill_range.begin);
    EXPECT_EQ(back.skill_range.end, demos[k].skill_range.end);
    EXPECT_EQ(back.mesh_id, demos[k].mesh_id);
    EXPECT_EQ(geometry::ToArray(back.object_pose), geometry::ToArray(demos[k].object_pose));
    for (int t = 0; t < back.size(); ++t) {
      EXPECT_EQ(geometry::ToArray(back.steps[t].ee_pose),
                geometry::ToArray(demos[k].steps[t].ee_pose));
      EXPECT_EQ(back.steps[t].gripper, demos[k].steps[t].gripper);
      EXPECT_TRUE(back.steps[t].cloud == demos[k].steps[t].cloud);
      EXPECT_EQ(back.steps[t].joints, demos[k].steps[t].joints);
    }
  }
}

TEST(DatasetTest, EmptyListGivesValidEmptyManifest) {
  testing::TempDir dir("empty");
  const Manifest manifest = WriteDataset({}, dir.path());
  EXPECT_TRUE(manifest.demos.empty());
  EXPECT_TRUE(ReadManifest(dir.path()).demos.empty());
}

TEST(DatasetTest, MixedCloudSizesRejected) {
  testing::TempDir dir("mixed");
  std::vector<Demonstration> demos{MakeDemo(1, 10, 64), MakeDemo(2, 10, 32)};
  try {
    WriteDataset(demos, dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(DatasetTest, ReadFrameBounds) {
  testing::TempDir dir("frames");
  std::vector<Demonstration> demos{MakeDemo(7, 12, 32)};
  const Manifest manifest = WriteDataset(demos, dir.path());
  EXPECT_TRUE(ReadFrame(dir.path(), manifest, 0, 11) == demos[0].steps[11].cloud);
  EXPECT_THROW(ReadFrame(dir.path(), manifest, 0, 12), Error);
  EXPECT_THROW(ReadFrame(dir.path(), manifest, 0, -1), Error);
  EXPECT_THROW(ReadFrame(dir.path(), manifest, 1, 0), Error);
}

TEST(DatasetTest, TruncatedFileIsParseError) {
  testing::TempDir dir("trunc");
  std::vector<Demonstration> demos{MakeDemo(8, 10, 32)};
  const Manifest manifest = WriteDataset(demos, dir.path());
  std::filesystem::resize_file(dir.path() / manifest.demos[0].dir / "traj.bin", 100);
  EXPECT_THROW(ReadDemo(dir.path(), manifest, 0), Error);
}

}  // namespace
}  // namespace demoforge::demo
