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

#include "demoforge/mesh/queries.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "demoforge/common/error.h"

namespace demoforge::mesh {
namespace {

constexpr int kMaxCellsPerAxis = 256;

using Candidate = std::pair<double, uint32_t>;  // squared distance, index

std::vector<NeighborVertex> TakeNearest(const std::vector<Eigen::Vector3d>& vertices,
                                        std::vector<Candidate>& candidates,
                                        std::size_t m) {
  std::sort(candidates.begin(), candidates.end());
  std::vector<NeighborVertex> result;
  result.reserve(m);
  for (std::size_t i = 0; i < m && i < candidates.size(); ++i) {
    const uint32_t index = candidates[i].second;
    result.push_back({index, vertices[index], std::sqrt(candidates[i].first)});
  }
  return result;
}

}  // namespace

VertexGrid::VertexGrid(const std::vector<Eigen::Vector3d>& vertices) {
  Eigen::AlignedBox3d box;
  for (const Eigen::Vector3d& v : vertices) box.extend(v);
  const Eigen::Vector3d extent = (box.max() - box.min()).cwiseMax(1e-9);
  const double target_cells = std::max(1.0, static_cast<double>(vertices.size()) / 2.0);
  cell_size_ = std::max(std::cbrt(extent.prod() / target_cells),
                        extent.maxCoeff() / kMaxCellsPerAxis);
  origin_ = box.min();
  for (int a = 0; a < 3; ++a) {
    dims_[a] = std::clamp(static_cast<int>(std::ceil(extent[a] / cell_size_)), 1,
                          kMaxCellsPerAxis);
  }
  const std::size_t cells = static_cast<std::size_t>(dims_.prod());
  std::vector<uint32_t> counts(cells + 1, 0);
  std::vector<std::size_t> cell_of(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Eigen::Vector3i c = CellOf(vertices[i]);
    cell_of[i] = Flatten(c.x(), c.y(), c.z());
    ++counts[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) counts[c + 1] += counts[c];
  cell_start_ = counts;
  cell_items_.resize(vertices.size());
  std::vector<uint32_t> cursor(counts.begin(), counts.end() - 1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    cell_items_[cursor[cell_of[i]]++] = static_cast<uint32_t>(i);
  }
}

Eigen::Vector3i VertexGrid::CellOf(const Eigen::Vector3d& x) const {
  Eigen::Vector3i c;
  for (int a = 0; a < 3; ++a) {
    const double f = std::floor((x[a] - origin_[a]) / cell_size_);
    c[a] = static_cast<int>(std::clamp(f, 0.0, static_cast<double>(dims_[a] - 1)));
  }
  return c;
}

std::vector<NeighborVertex> VertexGrid::Nearest(
    const std::vector<Eigen::Vector3d>& vertices, const Eigen::Vector3d& x,
    std::size_t m) const {
  std::vector<Candidate> candidates;
  if (m == 0) return {};
  const Eigen::Vector3i c = CellOf(x);
  const double total_cells = static_cast<double>(dims_.prod());
  constexpr double kInf = std::numeric_limits<double>::infinity();

  for (int r = 0;; ++r) {
    const double cube = std::pow(2.0 * r + 1.0, 3);
    if (cube >= total_cells) {
      // The shell walk would touch most of the grid anyway.
      candidates.clear();
      candidates.reserve(vertices.size());
      for (std::size_t i = 0; i < vertices.size(); ++i) {
        candidates.emplace_back((vertices[i] - x).squaredNorm(), static_cast<uint32_t>(i));
      }
      return TakeNearest(vertices, candidates, m);
    }
    const Eigen::Vector3i lo = (c.array() - r).max(0).matrix();
    const Eigen::Vector3i hi = (c.array() + r).min(dims_.array() - 1).matrix();
    for (int iz = lo.z(); iz <= hi.z(); ++iz) {
      for (int iy = lo.y(); iy <= hi.y(); ++iy) {
        for (int ix = lo.x(); ix <= hi.x(); ++ix) {
          const int cheb = std::max({std::abs(ix - c.x()), std::abs(iy - c.y()),
                                     std::abs(iz - c.z())});
          if (cheb != r) continue;
          const std::size_t cell = Flatten(ix, iy, iz);
          for (uint32_t k = cell_start_[cell]; k < cell_start_[cell + 1]; ++k) {
            const uint32_t index = cell_items_[k];
            candidates.emplace_back((vertices[index] - x).squaredNorm(), index);
          }
        }
      }
    }
    bool covers_all = true;
    double safe = kInf;
    for (int a = 0; a < 3; ++a) {
      if (c[a] - r > 0) {
        covers_all = false;
        safe = std::min(safe, x[a] - (origin_[a] + (c[a] - r) * cell_size_));
      }
      if (c[a] + r < dims_[a] - 1) {
        covers_all = false;
        safe = std::min(safe, origin_[a] + (c[a] + r + 1) * cell_size_ - x[a]);
      }
    }
    if (covers_all) return TakeNearest(vertices, candidates, m);
    if (candidates.size() >= m) {
      std::nth_element(candidates.begin(), candidates.begin() + (m - 1), candidates.end());
      const double kth = std::sqrt(candidates[m - 1].first);
      if (kth < safe) return TakeNearest(vertices, candidates, m);
    }
  }
}

std::vector<NeighborVertex> NearestVertices(const TriMesh& mesh,
                                            const Eigen::Vector3d& x,
                                            std::size_t m) {
  if (m > mesh.vertex_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "requested " + std::to_string(m) + " neighbors from a mesh with " +
                    std::to_string(mesh.vertex_count()) + " vertices");
  }
  return mesh.grid().Nearest(mesh.vertices(), x, m);
}

Eigen::Vector3d ClosestPointOnTriangle(const Eigen::Vector3d& p,
                                       const Eigen::Vector3d& a,
                                       const Eigen::Vector3d& b,
                                       const Eigen::Vector3d& c) {
  // Voronoi-region walk (Ericson, Real-Time Collision Detection 5.1.5).
  const Eigen::Vector3d ab = b - a;
  const Eigen::Vector3d ac = c - a;
  const Eigen::Vector3d ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Eigen::Vector3d bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;

  const Eigen::Vector3d cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  }
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

std::vector<Eigen::Vector3d> NearestRefinedPoints(const TriMesh& mesh, const Eigen::Vector3d& x,
                                                  std::size_t m, double max_edge) {
  if (!(max_edge > 0.0) || m == 0) {
    throw Error(ErrorCode::kInvalidArgument, "refinement needs max_edge > 0 and m >= 1");
  }
  const auto& v = mesh.vertices();
  const double reach = mesh.bounds().exteriorDistance(x) + mesh.bounds().diagonal().norm();
  // Any refined point within rho lies on a face within rho, so the search is
  // exact once rho holds m points.
  double rho = serial::SurfaceDistance(mesh, x) + 4.0 * max_edge;
  for (;;) {
    const double rho2 = rho * rho;
    std::vector<std::pair<double, Eigen::Vector3d>> found;
    for (const Face& face : mesh.faces()) {
      const Eigen::Vector3d& a = v[face[0]];
      const Eigen::Vector3d& b = v[face[1]];
      const Eigen::Vector3d& c = v[face[2]];
      if ((ClosestPointOnTriangle(x, a, b, c) - x).squaredNorm() > rho2) continue;
      const double longest = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
      const int n = std::max(1, static_cast<int>(std::ceil(longest / max_edge)));
      for (int i = 0; i <= n; ++i) {
        for (int j = 0; i + j <= n; ++j) {
          const double wa = static_cast<double>(i) / n;
          const double wb = static_cast<double>(j) / n;
          const double wc = static_cast<double>(n - i - j) / n;
          const Eigen::Vector3d p = wa * a + wb * b + wc * c;
          const double d2 = (p - x).squaredNorm();
          if (d2 <= rho2) found.emplace_back(d2, p);
        }
      }
    }
    auto less = [](const std::pair<double, Eigen::Vector3d>& l,
                   const std::pair<double, Eigen::Vector3d>& r) {
      if (l.first != r.first) return l.first < r.first;
      return std::lexicographical_compare(l.second.data(), l.second.data() + 3, r.second.data(),
                                          r.second.data() + 3);
    };
    std::sort(found.begin(), found.end(), less);
    std::vector<Eigen::Vector3d> out;
    for (const auto& [d2, p] : found) {
      if (!out.empty() && out.back() == p) continue;
      out.push_back(p);
      if (out.size() == m) return out;
    }
    if (rho > reach) return out;
    rho *= 2.0;
  }
}

double SurfaceDistance(const TriMesh& mesh, const Eigen::Vector3d& x) {
  const auto& v = mesh.vertices();
  const auto& faces = mesh.faces();
  const long n = static_cast<long>(faces.size());
  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : best) schedule(static)
  for (long f = 0; f < n; ++f) {
    const Face& face = faces[f];
    const double d2 =
        (ClosestPointOnTriangle(x, v[face[0]], v[face[1]], v[face[2]]) - x).squaredNorm();
    best = std::min(best, d2);
  }
  return std::sqrt(best);
}

namespace serial {

double SurfaceDistance(const TriMesh& mesh, const Eigen::Vector3d& x) {
  const auto& v = mesh.vertices();
  double best = std::numeric_limits<double>::infinity();
  for (const Face& face : mesh.faces()) {
    best = std::min(
        best, (ClosestPointOnTriangle(x, v[face[0]], v[face[1]], v[face[2]]) - x).squaredNorm());
  }
  return std::sqrt(best);
}

}  // namespace serial
}  // namespace demoforge::mesh
