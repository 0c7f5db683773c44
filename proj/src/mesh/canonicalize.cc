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

#include "demoforge/mesh/canonicalize.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "demoforge/common/error.h"

namespace demoforge::mesh {
namespace {

// Sign making the skewness along `axis` non-negative; ties fall back to the
// sign that makes the dominant component of `axis` positive.
double AxisSign(const std::vector<Eigen::Vector3d>& centered,
                const Eigen::Vector3d& axis, double variance) {
  double third_moment = 0.0;
  for (const Eigen::Vector3d& c : centered) {
    const double s = c.dot(axis);
    third_moment += s * s * s;
  }
  third_moment /= static_cast<double>(centered.size());
  const double scale = std::pow(std::max(variance, 0.0), 1.5);
  if (std::abs(third_moment) > 1e-8 * scale) return third_moment >= 0.0 ? 1.0 : -1.0;
  Eigen::Index dominant = 0;
  axis.cwiseAbs().maxCoeff(&dominant);
  return axis[dominant] >= 0.0 ? 1.0 : -1.0;
}

}  // namespace

PrincipalAxes ComputePrincipalAxes(const std::vector<Eigen::Vector3d>& vertices) {
  PrincipalAxes result;
  result.centroid = Eigen::Vector3d::Zero();
  for (const Eigen::Vector3d& v : vertices) result.centroid += v;
  result.centroid /= static_cast<double>(vertices.size());
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  for (const Eigen::Vector3d& v : vertices) {
    const Eigen::Vector3d d = v - result.centroid;
    covariance += d * d.transpose();
  }
  covariance /= static_cast<double>(vertices.size());
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(covariance);
  result.variances = solver.eigenvalues();
  result.axes = solver.eigenvectors();
  return result;
}

TriMesh CanonicalizePca(const TriMesh& mesh, std::vector<std::string>* warnings) {
  const PrincipalAxes pca = ComputePrincipalAxes(mesh.vertices());
  const Eigen::Vector3d& var = pca.variances;
  const double largest = var[2];
  if (!(largest > 0.0) || var[0] <= kDegenerateEigenRelTol * largest ||
      var[1] - var[0] <= kDegenerateEigenRelTol * largest ||
      var[2] - var[1] <= kDegenerateEigenRelTol * largest) {
    throw Error(ErrorCode::kDegenerateCovariance,
                "mesh '" + mesh.id() + "' has no unique principal frame (variances " +
                    std::to_string(var[0]) + ", " + std::to_string(var[1]) + ", " +
                    std::to_string(var[2]) + ")");
  }
  if (warnings != nullptr && var[2] - var[1] <= kNearSymmetryRelTol * var[2]) {
    warnings->push_back("mesh '" + mesh.id() +
                        "': middle and longest principal variances within 5%; the "
                        "canonical frame may be a quarter turn off, consider a manual pose");
  }

  std::vector<Eigen::Vector3d> centered;
  centered.reserve(mesh.vertex_count());
  for (const Eigen::Vector3d& v : mesh.vertices()) centered.push_back(v - pca.centroid);

  // Shortest axis first, then middle; longest completes the frame.
  Eigen::Vector3d z_axis = pca.axes.col(0);
  z_axis *= AxisSign(centered, z_axis, var[0]);
  Eigen::Vector3d y_axis = pca.axes.col(1);
  y_axis *= AxisSign(centered, y_axis, var[1]);
  const Eigen::Vector3d x_axis = y_axis.cross(z_axis).normalized();

  Eigen::Matrix3d rotation;
  rotation.row(0) = x_axis.transpose();
  rotation.row(1) = y_axis.transpose();
  rotation.row(2) = z_axis.transpose();

  std::vector<Eigen::Vector3d> vertices;
  vertices.reserve(centered.size());
  for (const Eigen::Vector3d& c : centered) vertices.push_back(rotation * c);

  const geometry::Quat q = geometry::Quat::FromMatrix(rotation);
  const geometry::Pose step(q, -q.Rotate(pca.centroid));
  return TriMesh(mesh.id(), std::move(vertices), mesh.faces(), step * mesh.canonical_pose(),
                 mesh.scale_to_canonical());
}

TriMesh ApplyCanonicalPose(const TriMesh& raw_mesh, const geometry::Pose& raw_to_canonical) {
  return Transformed(raw_mesh, raw_to_canonical);
}

}  // namespace demoforge::mesh
