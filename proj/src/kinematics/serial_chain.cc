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

#include "demoforge/kinematics/serial_chain.h"

#include <Eigen/Dense>

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"

namespace demoforge::kinematics {

using geometry::Pose;
using geometry::Quat;

SerialChain::SerialChain(Pose base, std::vector<Joint> joints, Pose flange_to_ee)
    : base_(base), joints_(std::move(joints)), flange_to_ee_(flange_to_ee) {
  if (joints_.empty()) throw Error(ErrorCode::kConfigError, "chain needs at least one joint");
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    Joint& joint = joints_[i];
    const double norm = joint.axis.norm();
    if (!(norm > 1e-12)) {
      throw Error(ErrorCode::kConfigError, "joint " + std::to_string(i) + " has a zero axis");
    }
    joint.axis /= norm;
    if (!(joint.lower < joint.upper)) {
      throw Error(ErrorCode::kConfigError, "joint " + std::to_string(i) + " needs lower < upper");
    }
  }
}

bool SerialChain::WithinLimits(const Eigen::VectorXd& q) const {
  if (q.size() != dof()) return false;
  for (int i = 0; i < dof(); ++i) {
    if (!(q[i] >= joints_[i].lower && q[i] <= joints_[i].upper)) return false;
  }
  return true;
}

Eigen::VectorXd SerialChain::Clamp(const Eigen::VectorXd& q) const {
  Eigen::VectorXd out = q;
  for (int i = 0; i < dof(); ++i) out[i] = std::clamp(q[i], joints_[i].lower, joints_[i].upper);
  return out;
}

std::vector<Pose> LinkFrames(const SerialChain& chain, const Eigen::VectorXd& q) {
  if (q.size() != chain.dof()) {
    throw Error(ErrorCode::kInvalidArgument, "expected " + std::to_string(chain.dof()) +
                                                 " joint values, got " + std::to_string(q.size()));
  }
  if (!chain.WithinLimits(q)) throw Error(ErrorCode::kJointLimit, "joint vector outside limits");
  std::vector<Pose> frames;
  frames.reserve(chain.dof() + 1);
  Pose current = chain.base();
  for (int i = 0; i < chain.dof(); ++i) {
    const Joint& joint = chain.joints()[i];
    current = current * joint.origin * Pose::FromRotation(Quat::FromAxisAngle(joint.axis, q[i]));
    frames.push_back(current);
  }
  frames.push_back(current * chain.flange_to_ee());
  return frames;
}

Pose Fk(const SerialChain& chain, const Eigen::VectorXd& q) { return LinkFrames(chain, q).back(); }

Eigen::Matrix<double, 6, Eigen::Dynamic> Jacobian(const SerialChain& chain,
                                                   const Eigen::VectorXd& q) {
  const std::vector<Pose> frames = LinkFrames(chain, q);
  const Eigen::Vector3d ee = frames.back().translation();
  Eigen::Matrix<double, 6, Eigen::Dynamic> jacobian(6, chain.dof());
  for (int i = 0; i < chain.dof(); ++i) {
    // The joint rotation leaves its own axis and origin fixed.
    const Eigen::Vector3d axis = frames[i].rotation().Rotate(chain.joints()[i].axis);
    const Eigen::Vector3d origin = frames[i].translation();
    jacobian.block<3, 1>(0, i) = axis.cross(ee - origin);
    jacobian.block<3, 1>(3, i) = axis;
  }
  return jacobian;
}

Eigen::Matrix<double, 6, 1> PoseError(const Pose& target, const Pose& current) {
  Eigen::Matrix<double, 6, 1> error;
  error.head<3>() = target.translation() - current.translation();
  error.tail<3>() = (target.rotation() * current.rotation().Inverse()).ToRotationVector();
  return error;
}

IkResult Ik(const SerialChain& chain, const Pose& target, const Eigen::VectorXd& q0,
            const IkParams& params) {
  if (!target.translation().allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "IK target is not finite");
  }
  if (q0.size() != chain.dof()) {
    throw Error(ErrorCode::kInvalidArgument, "IK seed has the wrong length");
  }
  const double lambda2 = params.damping * params.damping;
  IkResult result{chain.Clamp(q0), 0};
  for (;; ++result.iterations) {
    const Eigen::Matrix<double, 6, 1> error = PoseError(target, Fk(chain, result.q));
    if (error.head<3>().norm() <= params.tol_pos && error.tail<3>().norm() <= params.tol_rot) {
      return result;
    }
    if (result.iterations >= params.max_iters) break;
    const Eigen::Matrix<double, 6, Eigen::Dynamic> j = Jacobian(chain, result.q);
    const Eigen::Matrix<double, 6, 6> jjt =
        j * j.transpose() + lambda2 * Eigen::Matrix<double, 6, 6>::Identity();
    Eigen::VectorXd step = j.transpose() * jjt.ldlt().solve(error);
    const double largest = step.cwiseAbs().maxCoeff();
    if (largest > params.max_joint_step) step *= params.max_joint_step / largest;
    result.q = chain.Clamp(result.q + step);
  }
  throw Error(ErrorCode::kIkUnreachable,
              "no convergence after " + std::to_string(params.max_iters) + " iterations");
}

namespace {

Pose PoseField(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) return Pose::Identity();
  return geometry::FromArray(doc.at(key).get<std::vector<double>>());
}

}  // namespace

SerialChain ChainFromJson(const nlohmann::json& doc) {
  try {
    std::vector<Joint> joints;
    for (const nlohmann::json& entry : doc.at("joints")) {
      Joint joint;
      const auto axis = entry.at("axis").get<std::vector<double>>();
      if (axis.size() != 3) throw Error(ErrorCode::kConfigError, "joint axis needs 3 values");
      joint.axis = Eigen::Vector3d(axis[0], axis[1], axis[2]);
      joint.origin = PoseField(entry, "origin");
      if (entry.contains("limits")) {
        const auto limits = entry.at("limits").get<std::vector<double>>();
        if (limits.size() != 2) throw Error(ErrorCode::kConfigError, "joint limits need 2 values");
        joint.lower = limits[0];
        joint.upper = limits[1];
      }
      joints.push_back(joint);
    }
    return SerialChain(PoseField(doc, "base"), std::move(joints), PoseField(doc, "flange_to_ee"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("chain file: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw Error(ErrorCode::kConfigError, e.what());
    throw;
  }
}

SerialChain LoadChain(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFileText(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, path.string() + ": " + e.what());
  }
  return ChainFromJson(doc);
}

nlohmann::json ChainToJson(const SerialChain& chain) {
  nlohmann::json doc;
  doc["base"] = geometry::ToArray(chain.base());
  doc["flange_to_ee"] = geometry::ToArray(chain.flange_to_ee());
  doc["joints"] = nlohmann::json::array();
  for (const Joint& joint : chain.joints()) {
    doc["joints"].push_back({{"axis", {joint.axis.x(), joint.axis.y(), joint.axis.z()}},
                             {"origin", geometry::ToArray(joint.origin)},
                             {"limits", {joint.lower, joint.upper}}});
  }
  return doc;
}

}  // namespace demoforge::kinematics
