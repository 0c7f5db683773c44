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

#ifndef DEMOFORGE_KINEMATICS_SERIAL_CHAIN_H_
#define DEMOFORGE_KINEMATICS_SERIAL_CHAIN_H_

#include <filesystem>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

#include "demoforge/geometry/pose.h"

namespace demoforge::kinematics {

// Revolute joint: the fixed `origin` offset from the previous link frame,
// followed by a rotation of q radians about `axis` (expressed in the frame
// after `origin`).
struct Joint {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  geometry::Pose origin;
  double lower = -M_PI;
  double upper = M_PI;
};

class SerialChain {
 public:
  // Throws kConfigError on an empty joint list, a zero axis, or lower >= upper.
  SerialChain(geometry::Pose base, std::vector<Joint> joints, geometry::Pose flange_to_ee);

  const geometry::Pose& base() const { return base_; }
  const std::vector<Joint>& joints() const { return joints_; }
  const geometry::Pose& flange_to_ee() const { return flange_to_ee_; }
  int dof() const { return static_cast<int>(joints_.size()); }

  bool WithinLimits(const Eigen::VectorXd& q) const;
  Eigen::VectorXd Clamp(const Eigen::VectorXd& q) const;

 private:
  geometry::Pose base_;
  std::vector<Joint> joints_;
  geometry::Pose flange_to_ee_;
};

// World pose of each link frame: element i is the frame after joint i's
// rotation (link i), element dof() is the end effector. Throws kJointLimit
// for q outside the limits and kInvalidArgument for a wrong length.
std::vector<geometry::Pose> LinkFrames(const SerialChain& chain, const Eigen::VectorXd& q);

// Base -> end-effector pose.
geometry::Pose Fk(const SerialChain& chain, const Eigen::VectorXd& q);

// Geometric Jacobian in the world frame: rows 0-2 linear velocity of the ee
// origin, rows 3-5 angular velocity.
Eigen::Matrix<double, 6, Eigen::Dynamic> Jacobian(const SerialChain& chain,
                                                   const Eigen::VectorXd& q);

// Position error and rotation-vector error log(R_target R_current^T).
Eigen::Matrix<double, 6, 1> PoseError(const geometry::Pose& target,
                                      const geometry::Pose& current);

struct IkParams {
  double damping = 0.05;
  double max_joint_step = 0.2;  // radians per iteration
  double tol_pos = 1e-4;        // meters
  double tol_rot = 1e-3;        // radians
  int max_iters = 200;
};

struct IkResult {
  Eigen::VectorXd q;
  int iterations = 0;
};

// Damped least squares from seed q0 (clamped into the limits). Convergence is
// tested before each step, so a seed already at the target returns after zero
// steps. Throws kIkUnreachable after max_iters steps without convergence.
IkResult Ik(const SerialChain& chain, const geometry::Pose& target, const Eigen::VectorXd& q0,
            const IkParams& params = {});

// {"base": pose7, "flange_to_ee": pose7,
//  "joints": [{"axis": [3], "origin": pose7, "limits": [lo, hi]}]}
// Limits in radians; base and flange_to_ee default to identity.
SerialChain ChainFromJson(const nlohmann::json& doc);
SerialChain LoadChain(const std::filesystem::path& path);
nlohmann::json ChainToJson(const SerialChain& chain);

}  // namespace demoforge::kinematics

#endif  // DEMOFORGE_KINEMATICS_SERIAL_CHAIN_H_
