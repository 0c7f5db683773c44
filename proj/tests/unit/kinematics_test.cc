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

#include <cmath>

#include <gtest/gtest.h>

#include "demoforge/common/error.h"
#include "demoforge/common/random.h"
#include "demoforge/kinematics/serial_chain.h"
#include "demoforge/synth/synth.h"
#include "demoforge/transfer/generate.h"
#include "test_util.h"

namespace demoforge::kinematics {
namespace {

using geometry::Pose;
using geometry::Quat;

// Two links of length 1 rotating about z.
SerialChain PlanarArm() {
  std::vector<Joint> joints(2);
  joints[1].origin = Pose::FromTranslation(1.0, 0.0, 0.0);
  return SerialChain(Pose::Identity(), joints, Pose::FromTranslation(1.0, 0.0, 0.0));
}

// The test arm mounted 10 cm behind the origin with the tool pointing down
// (ee z = -world z) at wrist pitch pi/2, away from wrist singularities.
SerialChain TabletopArm() {
  const SerialChain arm = testing::SixJointArm();
  return SerialChain(Pose::FromTranslation(-0.1, 0.0, 0.0), arm.joints(),
                     Pose(Quat::RotY(-M_PI / 2.0) * Quat::RotX(M_PI), Eigen::Vector3d(0.1, 0.0, 0.0)));
}

Eigen::VectorXd RandomQ(const SerialChain& chain, Rng& rng, double margin = 0.0) {
  Eigen::VectorXd q(chain.dof());
  for (int i = 0; i < chain.dof(); ++i) {
    q[i] = rng.Uniform(chain.joints()[i].lower + margin, chain.joints()[i].upper - margin);
  }
  return q;
}

TEST(FkTest, ZeroIsProductOfOffsets) {
  const SerialChain arm = testing::SixJointArm();
  const Pose ee = Fk(arm, Eigen::VectorXd::Zero(6));
  EXPECT_LT((ee.translation() - Eigen::Vector3d(0.85, 0.0, 0.3)).norm(), 1e-15);
  EXPECT_EQ(ee.rotation().Angle(), 0.0);
}

TEST(FkTest, SingleRevoluteAboutZ) {
  const SerialChain chain(Pose::Identity(), {Joint{}}, Pose::Identity());
  const Pose ee = Fk(chain, Eigen::VectorXd::Constant(1, M_PI / 2.0));
  EXPECT_LT((ee.rotation().Matrix() - testing::AxisAngleMatrix(Eigen::Vector3d::UnitZ(), M_PI / 2.0))
                .norm(),
            1e-15);
}

TEST(FkTest, PlanarArmElbow) {
  const Pose ee = Fk(PlanarArm(), Eigen::Vector2d(M_PI / 2.0, -M_PI / 2.0));
  EXPECT_LT((ee.translation() - Eigen::Vector3d(1.0, 1.0, 0.0)).norm(), 1e-15);
  EXPECT_LT(ee.rotation().Angle(), 1e-15);
}

TEST(FkTest, MatchesMatrixProduct) {
  const SerialChain arm = testing::SixJointArm();
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd q = RandomQ(arm, rng);
    Eigen::Matrix4d m = arm.base().Matrix();
    for (int i = 0; i < arm.dof(); ++i) {
      Eigen::Matrix4d r = Eigen::Matrix4d::Identity();
      r.topLeftCorner<3, 3>() = testing::AxisAngleMatrix(arm.joints()[i].axis, q[i]);
      m = m * arm.joints()[i].origin.Matrix() * r;
    }
    m = m * arm.flange_to_ee().Matrix();
    EXPECT_LT((Fk(arm, q).Matrix() - m).norm(), 1e-12);
  }
}

TEST(FkTest, RejectsBadInput) {
  const SerialChain arm = testing::SixJointArm();
  try {
    Fk(arm, Eigen::VectorXd::Constant(6, 3.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kJointLimit);
  }
  EXPECT_THROW(Fk(arm, Eigen::VectorXd::Zero(5)), Error);
}

TEST(JacobianTest, MatchesCentralDifferences) {
  const SerialChain arm = testing::SixJointArm();
  Rng rng(2);
  const double eps = 1e-6;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd q = RandomQ(arm, rng, 0.1);
    const Eigen::Matrix<double, 6, Eigen::Dynamic> j = Jacobian(arm, q);
    const Pose base = Fk(arm, q);
    for (int c = 0; c < arm.dof(); ++c) {
      Eigen::VectorXd qp = q, qm = q;
      qp[c] += eps;
      qm[c] -= eps;
      const Pose fp = Fk(arm, qp);
      const Pose fm = Fk(arm, qm);
      Eigen::Matrix<double, 6, 1> fd;
      fd.head<3>() = (fp.translation() - fm.translation()) / (2.0 * eps);
      // Angular velocity from the rotation difference around the base pose.
      fd.tail<3>() = ((fp.rotation() * base.rotation().Inverse()).ToRotationVector() -
                      (fm.rotation() * base.rotation().Inverse()).ToRotationVector()) /
                     (2.0 * eps);
      const double scale = std::max(1.0, fd.norm());
      EXPECT_LT((j.col(c) - fd).norm() / scale, 1e-5) << "trial " << trial << " column " << c;
    }
  }
}

TEST(IkTest, SeedAtTargetConvergesImmediately) {
  const SerialChain arm = testing::SixJointArm();
  Rng rng(3);
  const Eigen::VectorXd q0 = RandomQ(arm, rng, 0.2);
  const IkResult r = Ik(arm, Fk(arm, q0), q0);
  EXPECT_LE(r.iterations, 1);
  EXPECT_LT((r.q - q0).norm(), 1e-12);
}

TEST(IkTest, OutOfReachIsUnreachable) {
  try {
    Ik(PlanarArm(), Pose::FromTranslation(3.0, 0.0, 0.0), Eigen::Vector2d(0.1, 0.1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIkUnreachable);
  }
}

TEST(IkTest, RoundTripOnRandomReachableTargets) {
  const SerialChain arm = testing::SixJointArm();
  Rng rng(4);
  int solved = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const Eigen::VectorXd q_true = RandomQ(arm, rng, 0.3);
    const Pose target = Fk(arm, q_true);
    Eigen::VectorXd seed = q_true;
    for (int i = 0; i < seed.size(); ++i) seed[i] += rng.Uniform(-0.5, 0.5);
    try {
      const IkResult r = Ik(arm, target, arm.Clamp(seed));
      const Pose reached = Fk(arm, r.q);
      EXPECT_LE((reached.translation() - target.translation()).norm(), 1e-3);
      EXPECT_LE(geometry::AngleBetween(reached.rotation(), target.rotation()), 1e-2);
      EXPECT_TRUE(arm.WithinLimits(r.q));
      ++solved;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kIkUnreachable);
    }
  }
  EXPECT_GE(solved, 95);
}

TEST(IkTest, StaysWithinLimits) {
  std::vector<Joint> joints(2);
  joints[0].lower = -0.5;
  joints[0].upper = 0.5;
  joints[1].origin = Pose::FromTranslation(1.0, 0.0, 0.0);
  const SerialChain arm(Pose::Identity(), joints, Pose::FromTranslation(1.0, 0.0, 0.0));
  // Reaching straight up needs joint 0 at 90 degrees, beyond its limit.
  EXPECT_THROW(Ik(arm, Pose(Quat::RotZ(M_PI / 2.0), Eigen::Vector3d(0.0, 2.0, 0.0)),
                  Eigen::Vector2d(0.0, 0.0)),
               Error);
}

TEST(IkTest, WarmStartAlongTeapotTrajectoryIsContinuous) {
  const synth::Teapot teapot = synth::MakeTeapot("teapot_a", synth::TeapotParams{});
  synth::SourceDemoParams params;
  params.rotation = teapot.upright;
  params.render_clouds = false;
  const demo::Demonstration src = synth::MakeSourceDemo(teapot, params).demo;
  const SerialChain arm = TabletopArm();
  transfer::GenerateParams gen;
  gen.chain = &arm;
  // Seed for the first waypoint from random restarts.
  Rng rng(6);
  for (int attempt = 0; attempt < 50 && gen.ik_seed.size() == 0; ++attempt) {
    try {
      gen.ik_seed = Ik(arm, src.steps.front().ee_pose, RandomQ(arm, rng, 0.3)).q;
    } catch (const Error&) {
    }
  }
  ASSERT_EQ(gen.ik_seed.size(), 6);
  const Pose t_new = Pose::FromTranslation(0.0, 0.05, 0.0) * src.object_pose;
  const transfer::GeneratedTrajectory traj = transfer::GenerateDemo(src, src.keypoints, t_new, gen);
  ASSERT_EQ(traj.joints.size(), traj.path.size());
  double max_jump = 0.0;
  for (std::size_t k = 0; k < traj.joints.size(); ++k) {
    const Pose reached = Fk(arm, traj.joints[k]);
    EXPECT_LE((reached.translation() - traj.path[k].pose.translation()).norm(), 1e-3);
    if (k > 0) max_jump = std::max(max_jump, (traj.joints[k] - traj.joints[k - 1]).cwiseAbs().maxCoeff());
  }
  EXPECT_LE(max_jump, 0.3);
}

TEST(ChainTest, JsonRoundTripAndValidation) {
  const SerialChain arm = testing::SixJointArm();
  const SerialChain back = ChainFromJson(ChainToJson(arm));
  ASSERT_EQ(back.dof(), arm.dof());
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd q = RandomQ(arm, rng);
    EXPECT_LT(testing::PoseGap(Fk(arm, q), Fk(back, q)), 1e-15);
  }
  EXPECT_THROW(SerialChain(Pose(), {}, Pose()), Error);
  Joint flipped;
  flipped.lower = 1.0;
  flipped.upper = 0.0;
  EXPECT_THROW(SerialChain(Pose(), {flipped}, Pose()), Error);
  Joint zero_axis;
  zero_axis.axis = Eigen::Vector3d::Zero();
  EXPECT_THROW(SerialChain(Pose(), {zero_axis}, Pose()), Error);
  try {
    ChainFromJson({{"joints", {{{"axis", {0, 0, 1}}, {"limits", {1.0}}}}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
  }
}

}  // namespace
}  // namespace demoforge::kinematics
