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

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "gtest/gtest.h"

#include "demoforge/common/error.h"
#include "demoforge/common/random.h"
#include "demoforge/pointcloud/assemble.h"
#include "demoforge/pointcloud/ply.h"
#include "demoforge/pointcloud/point_cloud.h"
#include "demoforge/pointcloud/sampling.h"

namespace demoforge::pointcloud {
namespace {

std::vector<Eigen::Vector3f> RandomPoints(Rng& rng, std::size_t n, double spread = 1.0) {
  std::vector<Eigen::Vector3f> points(n);
  for (Eigen::Vector3f& p : points) {
    p = Eigen::Vector3f(rng.Uniform(-spread, spread), rng.Uniform(-spread, spread),
                        rng.Uniform(-spread, spread));
  }
  return points;
}

SegmentedPointCloud CloudOf(const std::vector<Eigen::Vector3f>& points, Label label) {
  SegmentedPointCloud cloud;
  for (const Eigen::Vector3f& p : points) cloud.Append(p, label);
  return cloud;
}

double MinPairwise(const std::vector<Eigen::Vector3d>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, (pts[i] - pts[j]).norm());
  }
  return best;
}

TEST(CropTest, AllInsideIsIdentity) {
  Rng rng(1);
  const SegmentedPointCloud cloud = CloudOf(RandomPoints(rng, 100, 0.5), Label::kObject);
  const Workspace box{Eigen::Vector3d::Constant(-1), Eigen::Vector3d::Constant(1)};
  EXPECT_TRUE(Crop(cloud, box) == cloud);
}

TEST(CropTest, AllOutsideIsEmptyResult) {
  Rng rng(2);
  const SegmentedPointCloud cloud = CloudOf(RandomPoints(rng, 100, 0.5), Label::kObject);
  const Workspace box{Eigen::Vector3d::Constant(5), Eigen::Vector3d::Constant(6)};
  try {
    Crop(cloud, box);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyResult);
  }
}

TEST(CropTest, HalfInsideKeepsExactlyThatHalf) {
  Rng rng(3);
  SegmentedPointCloud cloud;
  SegmentedPointCloud expected;
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3f p(rng.Uniform(-1, 1), rng.Uniform(-1, 1), rng.Uniform(-1, 1));
    const Label label = static_cast<Label>(i % kLabelCount);
    cloud.Append(p, label);
    if (p.x() >= 0.0f) expected.Append(p, label);
  }
  const Workspace box{Eigen::Vector3d(0, -1, -1), Eigen::Vector3d(1, 1, 1)};
  EXPECT_TRUE(Crop(cloud, box) == expected);
}

TEST(FpsTest, FullSampleIsPermutation) {
  Rng rng(4);
  const std::vector<Eigen::Vector3f> points = RandomPoints(rng, 50);
  std::vector<std::size_t> idx = FarthestPointIndices(points, 50);
  std::sort(idx.begin(), idx.end());
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(idx[i], i);
}

TEST(FpsTest, SegmentPicksEndpoints) {
  const std::vector<Eigen::Vector3f> points{{0, 0, 0}, {0.5f, 0, 0}, {1, 0, 0}};
  // Brute force over 2-subsets.
  std::set<std::size_t> best;
  double best_d = -1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double d = (points[i] - points[j]).norm();
      if (d > best_d) {
        best_d = d;
        best = {i, j};
      }
    }
  }
  const std::vector<std::size_t> idx = FarthestPointIndices(points, 2);
  EXPECT_EQ(std::set<std::size_t>(idx.begin(), idx.end()), best);
  EXPECT_EQ(idx[0], 0u);
}

TEST(FpsTest, CubeCornersWithinTwoApproximation) {
  std::vector<Eigen::Vector3f> corners;
  for (int i = 0; i < 8; ++i) corners.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
  double optimum = 0.0;
  for (int mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    std::vector<Eigen::Vector3d> subset;
    for (int i = 0; i < 8; ++i) {
      if (mask & (1 << i)) subset.push_back(corners[i].cast<double>());
    }
    optimum = std::max(optimum, MinPairwise(subset));
  }
  EXPECT_NEAR(optimum, std::sqrt(2.0), 1e-12);
  std::vector<Eigen::Vector3d> picked;
  for (std::size_t i : FarthestPointIndices(corners, 4)) picked.push_back(corners[i].cast<double>());
  EXPECT_GE(MinPairwise(picked), 0.5 * optimum);
}

TEST(FpsTest, FirstPickIsCentroidFarthest) {
  std::vector<Eigen::Vector3f> points{{0, 0, 0}, {0.1f, 0, 0}, {0, 0.1f, 0}, {2, 2, 2}};
  EXPECT_EQ(CentroidFarthestIndex(points), 3u);
  EXPECT_EQ(FarthestPointIndices(points, 1)[0], 3u);
}

// Exhaustive check: pick k maximizes the min-distance to the picks before it.
TEST(FpsTest, FarthestPropertyExhaustive) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<Eigen::Vector3f> points = RandomPoints(rng, 200);
    const std::vector<std::size_t> idx = FarthestPointIndices(points, 40);
    std::vector<double> min_d(points.size(), std::numeric_limits<double>::infinity());
    std::vector<bool> taken(points.size(), false);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0) {
        double best = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
          if (!taken[i]) best = std::max(best, min_d[i]);
        }
        EXPECT_GE(min_d[idx[k]], best - 1e-6) << "trial " << trial << " pick " << k;
      }
      ASSERT_FALSE(taken[idx[k]]);
      taken[idx[k]] = true;
      const Eigen::Vector3d s = points[idx[k]].cast<double>();
      for (std::size_t i = 0; i < points.size(); ++i) {
        min_d[i] = std::min(min_d[i], (points[i].cast<double>() - s).norm());
      }
    }
  }
}

TEST(FpsTest, ParallelMatchesSerialAndIsDeterministic) {
  Rng rng(6);
  for (std::size_t n : {1u, 7u, 100u, 1024u}) {
    const std::vector<Eigen::Vector3f> points = RandomPoints(rng, 5000);
    const std::vector<std::size_t> a = FarthestPointIndices(points, n);
    EXPECT_EQ(a, serial::FarthestPointIndices(points, n));
    EXPECT_EQ(a, FarthestPointIndices(points, n));
  }
}

TEST(FpsTest, DuplicatePointsMatchSerial) {
  std::vector<Eigen::Vector3f> points(300, Eigen::Vector3f(0.1f, 0.2f, 0.3f));
  for (int i = 0; i < 100; ++i) points[i * 3] = Eigen::Vector3f(i * 0.01f, 0, 0);
  EXPECT_EQ(FarthestPointIndices(points, 150), serial::FarthestPointIndices(points, 150));
}

TEST(FpsTest, TooFewPoints) {
  Rng rng(7);
  const std::vector<Eigen::Vector3f> points = RandomPoints(rng, 10);
  EXPECT_THROW(FarthestPointIndices(points, 11), Error);
  EXPECT_THROW(FarthestPointIndices(points, 0), Error);
}

std::vector<Eigen::Vector3f> Blob(Rng& rng, const Eigen::Vector3f& center, std::size_t n) {
  std::vector<Eigen::Vector3f> points;
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back(center + Eigen::Vector3f(rng.Uniform(-0.015, 0.015),
                                              rng.Uniform(-0.015, 0.015),
                                              rng.Uniform(-0.015, 0.015)));
  }
  return points;
}

TEST(DbscanTest, SingleBlobUnchanged) {
  Rng rng(8);
  const SegmentedPointCloud blob = CloudOf(Blob(rng, Eigen::Vector3f::Zero(), 500), Label::kGoal);
  EXPECT_TRUE(DbscanFilter(blob, 0.01, 10) == blob);
}

TEST(DbscanTest, OutliersRemoved) {
  Rng rng(9);
  const std::vector<Eigen::Vector3f> blob = Blob(rng, Eigen::Vector3f::Zero(), 500);
  SegmentedPointCloud cloud;
  for (int i = 0; i < 5; ++i) {
    cloud.Append(Eigen::Vector3f(1.0f + i, 0, 0), Label::kGoal);
  }
  cloud.Append(CloudOf(blob, Label::kGoal));
  // Oracle: every blob point has >= 10 neighbors within 1 cm, outliers none.
  const std::vector<std::size_t> counts = serial::NeighborCounts(cloud.points, 0.01);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(counts[i], 1u);
  EXPECT_TRUE(DbscanFilter(cloud, 0.01, 10) == CloudOf(blob, Label::kGoal));
}

TEST(DbscanTest, EqualBlobsTieGoesToLowestIndex) {
  Rng rng(10);
  const std::vector<Eigen::Vector3f> a = Blob(rng, Eigen::Vector3f(0, 0, 0), 200);
  const std::vector<Eigen::Vector3f> b = Blob(rng, Eigen::Vector3f(0.5f, 0, 0), 200);
  SegmentedPointCloud cloud;
  SegmentedPointCloud expected;
  for (int i = 0; i < 200; ++i) {
    cloud.Append(b[i], Label::kGoal);
    cloud.Append(a[i], Label::kGoal);
    expected.Append(b[i], Label::kGoal);
  }
  EXPECT_TRUE(DbscanFilter(cloud, 0.01, 10) == expected);
}

TEST(DbscanTest, AllNoiseIsEmptyResult) {
  SegmentedPointCloud cloud;
  for (int i = 0; i < 20; ++i) cloud.Append(Eigen::Vector3f(i, 0, 0), Label::kGoal);
  try {
    DbscanFilter(cloud, 0.01, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyResult);
  }
}

TEST(DbscanTest, NeighborCountsParallelMatchesSerial) {
  Rng rng(11);
  const std::vector<Eigen::Vector3f> points = RandomPoints(rng, 3000, 0.1);
  EXPECT_EQ(NeighborCounts(points, 0.01), serial::NeighborCounts(points, 0.01));
}

TEST(ResizeTest, PadsCyclically) {
  SegmentedPointCloud cloud;
  cloud.Append(Eigen::Vector3f(1, 0, 0), Label::kRobot);
  cloud.Append(Eigen::Vector3f(2, 0, 0), Label::kGoal);
  const SegmentedPointCloud out = ResizeCloud(cloud, 5);
  ASSERT_EQ(out.size(), 5u);
  EXPECT_EQ(out.points[4], cloud.points[0]);
  EXPECT_EQ(out.labels[3], Label::kGoal);
}

TEST(PlyTest, RoundTripIsExact) {
  Rng rng(12);
  SegmentedPointCloud cloud;
  for (const Eigen::Vector3f& p : RandomPoints(rng, 300)) {
    cloud.Append(p, static_cast<Label>(rng.Index(kLabelCount)));
  }
  EXPECT_TRUE(ParseAsciiPly(ToAsciiPly(cloud)) == cloud);
  EXPECT_THROW(ParseAsciiPly("ply\nformat ascii 1.0\nelement vertex 3\nend_header\n1 2 3 0\n"),
               Error);
}

// Goal clouds carry the source frame index in x so provenance is checkable.
struct AssembleFixture {
  std::vector<SegmentedPointCloud> real;
  std::vector<SegmentedPointCloud> sim;

  AssembleFixture(int source_steps, int generated_steps, std::size_t goal_n, std::size_t sim_n) {
    Rng rng(13);
    for (int s = 0; s < source_steps; ++s) {
      SegmentedPointCloud c;
      for (std::size_t i = 0; i < goal_n; ++i) {
        c.Append(Eigen::Vector3f(100.0f + s, rng.Uniform(), rng.Uniform()), Label::kGoal);
      }
      real.push_back(c);
    }
    for (int t = 0; t < generated_steps; ++t) {
      SegmentedPointCloud c;
      for (std::size_t i = 0; i < sim_n; ++i) {
        c.Append(Eigen::Vector3f(-100.0f - t, rng.Uniform(), rng.Uniform()),
                 i % 2 ? Label::kRobot : Label::kObject);
      }
      sim.push_back(c);
    }
  }
};

TEST(AssembleTest, IdentityReplayKeepsGoalPoints) {
  AssembleFixture f(60, 60, 100, 200);
  AssembleInput input{f.real, f.sim, {20, 40}, {20, 40}, 300, 1};
  const std::vector<SegmentedPointCloud> frames = Assemble(input);
  for (int t = 20; t <= 40; ++t) {
    const SegmentedPointCloud goal = SelectLabel(frames[t], Label::kGoal);
    std::set<std::tuple<float, float, float>> got, want;
    for (const auto& p : goal.points) got.emplace(p.x(), p.y(), p.z());
    for (const auto& p : f.real[t].points) want.emplace(p.x(), p.y(), p.z());
    EXPECT_EQ(got, want) << "t=" << t;
  }
}

TEST(AssembleTest, ShiftedSkillReplaysShiftedFrames) {
  AssembleFixture f(60, 70, 50, 50);
  AssembleInput input{f.real, f.sim, {20, 40}, {30, 50}, 64, 2};
  for (int t = 30; t <= 50; ++t) EXPECT_EQ(GoalSourceIndex(input, t), t - 10);
  const std::vector<SegmentedPointCloud> frames = Assemble(input);
  for (int t = 30; t <= 50; ++t) {
    for (std::size_t i = 0; i < frames[t].size(); ++i) {
      if (frames[t].labels[i] == Label::kGoal) EXPECT_EQ(frames[t].points[i].x(), 100.0f + t - 10);
    }
  }
}

TEST(AssembleTest, NonSkillIndicesAvoidSkillAndCoverRest) {
  AssembleFixture f(30, 500, 4, 4);
  AssembleInput input{f.real, f.sim, {10, 19}, {200, 209}, 8, 3};
  std::set<int> seen;
  for (int t = 0; t < 500; ++t) {
    if (input.generated_skill.Contains(t)) continue;
    const int i = GoalSourceIndex(input, t);
    EXPECT_FALSE(input.source_skill.Contains(i));
    EXPECT_GE(i, 0);
    EXPECT_LT(i, 30);
    seen.insert(i);
  }
  EXPECT_EQ(seen.size(), 20u);
}

TEST(AssembleTest, FixedSizeAndLabelPartition) {
  AssembleFixture f(80, 90, 700, 900);
  AssembleInput input{f.real, f.sim, {30, 60}, {35, 65}, 1024, 4};
  const std::vector<SegmentedPointCloud> frames = Assemble(input);
  ASSERT_EQ(frames.size(), 90u);
  for (int t = 0; t < 90; ++t) {
    ASSERT_EQ(frames[t].size(), 1024u);
    const int source = GoalSourceIndex(input, t);
    for (std::size_t i = 0; i < frames[t].size(); ++i) {
      const float x = frames[t].points[i].x();
      if (frames[t].labels[i] == Label::kGoal) {
        EXPECT_EQ(x, 100.0f + source);
      } else {
        EXPECT_EQ(x, -100.0f - t);
      }
    }
  }
  EXPECT_EQ(Assemble(input), frames);
}

TEST(AssembleTest, ReplayOutsideSourceIsIndexOutOfRange) {
  AssembleFixture f(50, 100, 4, 4);
  AssembleInput input{f.real, f.sim, {30, 45}, {10, 45}, 8, 5};
  try {
    Assemble(input);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
}

}  // namespace
}  // namespace demoforge::pointcloud
