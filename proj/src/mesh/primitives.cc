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

#include "demoforge/mesh/primitives.h"

#include <cmath>
#include <vector>

#include "demoforge/common/error.h"

namespace demoforge::mesh {
namespace {

void AddQuad(std::vector<Face>& faces, uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
  faces.push_back({a, b, c});
  faces.push_back({a, c, d});
}

void CheckCounts(int a, int b) {
  if (a < 3 || b < 2) throw Error(ErrorCode::kInvalidArgument, "tessellation too coarse");
}

// Surface of revolution around z through the profile points (rho, z), ordered
// so that walking the profile and then turning counterclockwise about +z
// keeps the outside on the left. Profile ends with rho = 0 become poles.
TriMesh Revolve(const std::string& id, const std::vector<Eigen::Vector2d>& profile, int segments) {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;
  std::vector<std::vector<uint32_t>> rings;
  for (const Eigen::Vector2d& p : profile) {
    std::vector<uint32_t> ring;
    if (p.x() == 0.0) {
      ring.assign(segments, static_cast<uint32_t>(vertices.size()));
      vertices.emplace_back(0.0, 0.0, p.y());
    } else {
      for (int j = 0; j < segments; ++j) {
        const double phi = 2.0 * M_PI * j / segments;
        ring.push_back(static_cast<uint32_t>(vertices.size()));
        vertices.emplace_back(p.x() * std::cos(phi), p.x() * std::sin(phi), p.y());
      }
    }
    rings.push_back(std::move(ring));
  }
  for (std::size_t i = 0; i + 1 < rings.size(); ++i) {
    const bool pole_a = profile[i].x() == 0.0;
    const bool pole_b = profile[i + 1].x() == 0.0;
    for (int j = 0; j < segments; ++j) {
      const int k = (j + 1) % segments;
      const uint32_t a = rings[i][j], b = rings[i + 1][j], c = rings[i + 1][k], d = rings[i][k];
      if (pole_a && pole_b) continue;
      if (pole_a) {
        faces.push_back({a, b, c});
      } else if (pole_b) {
        faces.push_back({a, b, d});
      } else {
        AddQuad(faces, a, b, c, d);
      }
    }
  }
  return TriMesh(id, std::move(vertices), std::move(faces));
}

}  // namespace

TriMesh Box(const std::string& id, const Eigen::Vector3d& h) {
  std::vector<Eigen::Vector3d> vertices;
  for (int i = 0; i < 8; ++i) {
    vertices.emplace_back((i & 1) ? h.x() : -h.x(), (i & 2) ? h.y() : -h.y(),
                          (i & 4) ? h.z() : -h.z());
  }
  std::vector<Face> faces;
  AddQuad(faces, 0, 2, 3, 1);  // -z
  AddQuad(faces, 4, 5, 7, 6);  // +z
  AddQuad(faces, 0, 1, 5, 4);  // -y
  AddQuad(faces, 2, 6, 7, 3);  // +y
  AddQuad(faces, 0, 4, 6, 2);  // -x
  AddQuad(faces, 1, 3, 7, 5);  // +x
  return TriMesh(id, std::move(vertices), std::move(faces));
}

TriMesh Ellipsoid(const std::string& id, const Eigen::Vector3d& radii, int slices, int stacks) {
  CheckCounts(slices, stacks);
  std::vector<Eigen::Vector2d> profile;
  for (int i = 0; i <= stacks; ++i) {
    const double theta = M_PI * i / stacks;
    profile.emplace_back(i == 0 || i == stacks ? 0.0 : std::sin(theta), std::cos(theta));
  }
  TriMesh unit = Revolve(id, profile, slices);
  std::vector<Eigen::Vector3d> vertices;
  for (const Eigen::Vector3d& v : unit.vertices()) vertices.push_back(v.cwiseProduct(radii));
  return TriMesh(id, std::move(vertices), unit.faces());
}

TriMesh Torus(const std::string& id, double major_radius, double minor_radius, int segments,
              int sides) {
  CheckCounts(segments, sides);
  if (!(major_radius > minor_radius && minor_radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "torus needs major > minor > 0");
  }
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;
  for (int j = 0; j < segments; ++j) {
    const double u = 2.0 * M_PI * j / segments;
    for (int k = 0; k < sides; ++k) {
      const double v = 2.0 * M_PI * k / sides;
      const double rho = major_radius + minor_radius * std::cos(v);
      vertices.emplace_back(rho * std::cos(u), rho * std::sin(u), minor_radius * std::sin(v));
    }
  }
  const auto at = [&](int j, int k) {
    return static_cast<uint32_t>((j % segments) * sides + (k % sides));
  };
  for (int j = 0; j < segments; ++j) {
    for (int k = 0; k < sides; ++k) AddQuad(faces, at(j, k), at(j + 1, k), at(j + 1, k + 1), at(j, k + 1));
  }
  return TriMesh(id, std::move(vertices), std::move(faces));
}

TriMesh Frustum(const std::string& id, double r0, double r1, double height, int segments) {
  CheckCounts(segments, 2);
  // Profile from the top pole down the side to the bottom pole.
  return Revolve(id, {{0.0, height}, {r1, height}, {r0, 0.0}, {0.0, 0.0}}, segments);
}

TriMesh Cup(const std::string& id, double radius, double height, double thickness,
            int segments) {
  CheckCounts(segments, 2);
  const double inner = radius - thickness;
  return Revolve(id,
                 {{0.0, thickness},
                  {inner, thickness},
                  {inner, height},
                  {radius, height},
                  {radius, 0.0},
                  {0.0, 0.0}},
                 segments);
}

}  // namespace demoforge::mesh
