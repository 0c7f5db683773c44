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
#include <numeric>
#include <vector>

#include "gtest/gtest.h"

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"
#include "demoforge/mesh/canonicalize.h"
#include "demoforge/mesh/mesh_io.h"
#include "demoforge/mesh/primitives.h"
#include "demoforge/mesh/queries.h"
#include "demoforge/mesh/tri_mesh.h"
#include "demoforge/synth/synth.h"
#include "test_util.h"

namespace demoforge::mesh {
namespace {

constexpr char kUnitCubeObj[] = R"(# unit cube
v -0.5 -0.5 -0.5
v  0.5 -0.5 -0.5
v  0.5  0.5 -0.5
v -0.5  0.5 -0.5
v -0.5 -0.5  0.5
v  0.5 -0.5  0.5
v  0.5  0.5  0.5
v -0.5  0.5  0.5
f 1 4 3 2
f 5 6 7 8
f 1 2 6 5
f 2 3 7 6
f 3 4 8 7
f 4 1 5 8
)";

TriMesh UnitCube() { return ParseObj(kUnitCubeObj, "cube"); }

double SignedVolume(const TriMesh& mesh) {
  double v = 0.0;
  for (const Face& f : mesh.faces()) {
    v += mesh.vertex(f[0]).dot(mesh.vertex(f[1]).cross(mesh.vertex(f[2])));
  }
  return v / 6.0;
}

// Max over a of min over b of |a - b|.
double SetDistance(const std::vector<Eigen::Vector3d>& a, const std::vector<Eigen::Vector3d>& b) {
  double worst = 0.0;
  for (const Eigen::Vector3d& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const Eigen::Vector3d& q : b) best = std::min(best, (p - q).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

TEST(MeshIoTest, UnitCubeObj) {
  const TriMesh cube = UnitCube();
  EXPECT_EQ(cube.vertex_count(), 8u);
  EXPECT_EQ(cube.face_count(), 12u);
  EXPECT_EQ(cube.id(), "cube");
  EXPECT_NEAR(SignedVolume(cube), 1.0, 1e-12);
  EXPECT_EQ(geometry::ToArray(cube.canonical_pose()), geometry::ToArray(geometry::Pose()));
}

TEST(MeshIoTest, FaceIndexOutOfRange) {
  try {
    ParseObj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n", "bad");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
}

TEST(MeshIoTest, ZeroAreaFace) {
  try {
    ParseObj("v 0 0 0\nv 1 0 0\nv 2 0 0\nv 0 1 0\nf 1 2 4\nf 1 2 3\n", "flat");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateMesh);
  }
}

TEST(MeshIoTest, MalformedLines) {
  EXPECT_THROW(ParseObj("v 0 0\n", "x"), Error);
  EXPECT_THROW(ParseObj("v 0 0 a\n", "x"), Error);
  EXPECT_THROW(ParseObj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2\n", "x"), Error);
}

TEST(MeshIoTest, ObjWriteReadIsExact) {
  testing::TempDir dir("obj");
  const TriMesh teapot = synth::MakeTeapot("teapot", synth::TeapotParams{}).mesh;
  WriteObj(teapot, dir.path() / "teapot.obj");
  const TriMesh back = LoadMesh(dir.path() / "teapot.obj");
  EXPECT_EQ(back.id(), "teapot");
  EXPECT_EQ(back.vertices(), teapot.vertices());
  EXPECT_EQ(back.faces(), teapot.faces());
}

TEST(MeshIoTest, BinaryPly) {
  const std::string header =
      "ply\nformat binary_little_endian 1.0\nelement vertex 4\nproperty float x\n"
      "property float y\nproperty float z\nelement face 4\n"
      "property list uchar int vertex_indices\nend_header\n";
  std::vector<uint8_t> bytes(header.begin(), header.end());
  const float v[4][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (const auto& p : v) {
    for (float c : p) AppendLe(bytes, c);
  }
  const int32_t f[4][3] = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  for (const auto& face : f) {
    AppendLe<uint8_t>(bytes, 3);
    for (int32_t i : face) AppendLe(bytes, i);
  }
  const TriMesh tet = ParsePly(bytes, "tet");
  EXPECT_EQ(tet.vertex_count(), 4u);
  EXPECT_EQ(tet.face_count(), 4u);
  EXPECT_NEAR(SignedVolume(tet), 1.0 / 6.0, 1e-12);
  bytes.resize(bytes.size() - 5);
  EXPECT_THROW(ParsePly(bytes, "tet"), Error);
}

TEST(MeshIoTest, PoseOverrides) {
  testing::TempDir dir("overrides");
  WriteFileText(dir.path() / "o.json", R"({"mug_01": [1, 0, 0, 0, 0.1, 0.2, 0.3]})");
  const auto overrides = LoadPoseOverrides(dir.path() / "o.json");
  ASSERT_EQ(overrides.count("mug_01"), 1u);
  EXPECT_EQ(overrides.at("mug_01").translation(), Eigen::Vector3d(0.1, 0.2, 0.3));
  WriteFileText(dir.path() / "bad.json", R"({"mug_01": [1, 0, 0]})");
  EXPECT_THROW(LoadPoseOverrides(dir.path() / "bad.json"), Error);
}

TEST(PrimitivesTest, OutwardWindingAndVolume) {
  EXPECT_NEAR(SignedVolume(Box("b", {2, 1, 0.5})), 8.0, 1e-12);
  const double ellipsoid = SignedVolume(Ellipsoid("e", {0.3, 0.2, 0.1}, 64, 32));
  EXPECT_NEAR(ellipsoid, 4.0 / 3.0 * M_PI * 0.3 * 0.2 * 0.1, 0.01 * ellipsoid);
  const double torus = SignedVolume(Torus("t", 0.1, 0.02, 64, 32));
  EXPECT_NEAR(torus, 2.0 * M_PI * M_PI * 0.1 * 0.02 * 0.02, 0.01 * torus);
  const double frustum = SignedVolume(Frustum("f", 0.1, 0.05, 0.2, 128));
  EXPECT_NEAR(frustum, M_PI * 0.2 / 3.0 * (0.01 + 0.005 + 0.0025), 0.01 * frustum);
  EXPECT_GT(SignedVolume(Cup("c", 0.04, 0.08, 0.004, 32)), 0.0);
}

TEST(CanonicalizeTest, AxisAlignedBoxIsIdentity) {
  const TriMesh box = Box("box", {2.0, 1.0, 0.5});
  const TriMesh c = CanonicalizePca(box);
  EXPECT_LT(SetDistance(c.vertices(), box.vertices()), 1e-9);
  EXPECT_LT((c.canonical_pose().rotation().Matrix().cwiseAbs() - Eigen::Matrix3d::Identity()).norm(),
            1e-9);
}

TEST(CanonicalizeTest, RotatedBoxRecoversBox) {
  Rng rng(1);
  const TriMesh box = Box("box", {2.0, 1.0, 0.5});
  for (int i = 0; i < 20; ++i) {
    const geometry::Pose pose = testing::RandomPose(rng);
    const TriMesh c = CanonicalizePca(Transformed(box, pose));
    EXPECT_LT(SetDistance(c.vertices(), box.vertices()), 1e-6);
    EXPECT_LT(ComputePrincipalAxes(c.vertices()).centroid.norm(), 1e-9);
    // canonical_pose maps the as-loaded frame onto the canonical one.
    for (std::size_t k = 0; k < box.vertex_count(); ++k) {
      EXPECT_LT((c.canonical_pose().Apply(box.vertex(k)) - c.vertex(k)).norm(), 1e-9);
    }
  }
}

TEST(CanonicalizeTest, ExtentOrderingAndCentroid) {
  const TriMesh teapot = synth::RawTeapot("t", synth::TeapotParams{});
  const TriMesh c = CanonicalizePca(teapot);
  const PrincipalAxes axes = ComputePrincipalAxes(c.vertices());
  EXPECT_LT(axes.centroid.norm(), 1e-6);
  EXPECT_LT(std::abs(std::abs(axes.axes(2, 0)) - 1.0), 1e-9);  // smallest variance along z
  EXPECT_LT(std::abs(std::abs(axes.axes(0, 2)) - 1.0), 1e-9);  // largest along x
}

TEST(CanonicalizeTest, SphereIsDegenerate) {
  try {
    CanonicalizePca(Ellipsoid("sphere", {0.1, 0.1, 0.1}, 32, 16));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateCovariance);
  }
}

TEST(CanonicalizeTest, NearSymmetryWarns) {
  std::vector<std::string> warnings;
  CanonicalizePca(Box("b", {1.0, 0.99, 0.5}), &warnings);
  EXPECT_EQ(warnings.size(), 1u);
  warnings.clear();
  CanonicalizePca(Box("b", {1.0, 0.5, 0.25}), &warnings);
  EXPECT_TRUE(warnings.empty());
}

TEST(CanonicalizeTest, Idempotent) {
  const TriMesh once = CanonicalizePca(synth::RawTeapot("t", synth::TeapotParams{}));
  const TriMesh twice = CanonicalizePca(once);
  double worst = 0.0;
  for (std::size_t i = 0; i < once.vertex_count(); ++i) {
    worst = std::max(worst, (once.vertex(i) - twice.vertex(i)).norm());
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(CanonicalizeTest, CommutesWithRigidMotion) {
  Rng rng(2);
  const TriMesh raw = synth::RawTeapot("t", synth::TeapotParams{});
  const TriMesh reference = CanonicalizePca(raw);
  for (int i = 0; i < 20; ++i) {
    const TriMesh c = CanonicalizePca(Transformed(raw, testing::RandomPose(rng)));
    double worst = 0.0;
    for (std::size_t k = 0; k < c.vertex_count(); ++k) {
      worst = std::max(worst, (c.vertex(k) - reference.vertex(k)).norm());
    }
    EXPECT_LT(worst, 1e-6);
  }
}

TEST(CanonicalizeTest, ManualPoseOverride) {
  const TriMesh box = Box("box", {2.0, 1.0, 0.5});
  const geometry::Pose pose(geometry::Quat::RotZ(0.3), {1, 2, 3});
  const TriMesh c = ApplyCanonicalPose(box, pose);
  EXPECT_LT((c.vertex(5) - pose.Apply(box.vertex(5))).norm(), 1e-12);
  EXPECT_LT(testing::PoseGap(c.canonical_pose(), pose), 1e-12);
}

TEST(NearestVerticesTest, ExactVertex) {
  const TriMesh cube = UnitCube();
  const auto n = NearestVertices(cube, cube.vertex(6), 1);
  ASSERT_EQ(n.size(), 1u);
  EXPECT_EQ(n[0].index, 6u);
  EXPECT_EQ(n[0].distance, 0.0);
}

TEST(NearestVerticesTest, FaceCenterGivesFaceCorners) {
  const TriMesh cube = UnitCube();
  const auto n = NearestVertices(cube, {0.0, 0.0, 0.5}, 4);
  std::vector<uint32_t> idx;
  for (const auto& v : n) idx.push_back(v.index);
  std::sort(idx.begin(), idx.end());
  EXPECT_EQ(idx, (std::vector<uint32_t>{4, 5, 6, 7}));
}

TEST(NearestVerticesTest, MatchesExhaustiveSort) {
  Rng rng(3);
  const TriMesh teapot = synth::MakeTeapot("t", synth::TeapotParams{}).mesh;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Vector3d x(rng.Uniform(-0.15, 0.15), rng.Uniform(-0.1, 0.1),
                            rng.Uniform(-0.1, 0.1));
    std::vector<uint32_t> order(teapot.vertex_count());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
      return (teapot.vertex(a) - x).norm() < (teapot.vertex(b) - x).norm();
    });
    const auto got = NearestVertices(teapot, x, 8);
    for (int k = 0; k < 8; ++k) {
      EXPECT_NEAR(got[k].distance, (teapot.vertex(order[k]) - x).norm(), 1e-12);
    }
  }
  const auto all = NearestVertices(teapot, Eigen::Vector3d::Zero(), teapot.vertex_count());
  EXPECT_EQ(all.size(), teapot.vertex_count());
  for (std::size_t k = 1; k < all.size(); ++k) EXPECT_LE(all[k - 1].distance, all[k].distance);
  EXPECT_THROW(NearestVertices(teapot, Eigen::Vector3d::Zero(), teapot.vertex_count() + 1), Error);
}

TEST(SurfaceDistanceTest, Examples) {
  const TriMesh cube = UnitCube();
  EXPECT_NEAR(SurfaceDistance(cube, cube.vertex(3)), 0.0, 1e-15);
  EXPECT_NEAR(SurfaceDistance(cube, {0.0, 0.0, 1.5}), 1.0, 1e-12);
  EXPECT_NEAR(SurfaceDistance(cube, {0.0, 0.0, 0.0}), 0.5, 1e-12);
  EXPECT_NEAR(SurfaceDistance(cube, {1.5, 1.5, 0.0}), std::sqrt(2.0), 1e-12);
}

TEST(SurfaceDistanceTest, ParallelMatchesSerial) {
  Rng rng(4);
  const TriMesh teapot = synth::MakeTeapot("t", synth::TeapotParams{}).mesh;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d x(rng.Uniform(-0.2, 0.2), rng.Uniform(-0.2, 0.2), rng.Uniform(-0.2, 0.2));
    EXPECT_EQ(SurfaceDistance(teapot, x), serial::SurfaceDistance(teapot, x));
  }
}

TEST(SurfaceDistanceTest, ClosestPointOnTriangleRegions) {
  const Eigen::Vector3d a(0, 0, 0), b(1, 0, 0), c(0, 1, 0);
  EXPECT_LT((ClosestPointOnTriangle({0.2, 0.2, 1}, a, b, c) - Eigen::Vector3d(0.2, 0.2, 0)).norm(), 1e-15);
  EXPECT_LT((ClosestPointOnTriangle({-1, -1, 0}, a, b, c) - a).norm(), 1e-15);
  EXPECT_LT((ClosestPointOnTriangle({0.5, -1, 0}, a, b, c) - Eigen::Vector3d(0.5, 0, 0)).norm(), 1e-15);
  EXPECT_LT((ClosestPointOnTriangle({1, 1, 0}, a, b, c) - Eigen::Vector3d(0.5, 0.5, 0)).norm(), 1e-15);
}

}  // namespace
}  // namespace demoforge::mesh
