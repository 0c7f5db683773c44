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

#include "demoforge/pointcloud/sampling.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include <omp.h>

#include "demoforge/common/error.h"

namespace demoforge::pointcloud {
namespace {

inline float Dist2(float ax, float ay, float az, float bx, float by, float bz) {
  const float dx = ax - bx;
  const float dy = ay - by;
  const float dz = az - bz;
  return dx * dx + dy * dy + dz * dz;
}

void CheckSampleCount(std::size_t available, std::size_t n) {
  if (n < 1 || available < n) {
    throw Error(ErrorCode::kTooFewPoints, "cannot sample " + std::to_string(n) + " of " +
                                              std::to_string(available) + " points");
  }
}

// Points bucketed by a uniform grid, stored structure-of-arrays in bucket
// order. Within a bucket, original indices ascend.
struct Buckets {
  std::vector<float> x, y, z;
  std::vector<std::size_t> original;
  std::vector<std::size_t> position_of;  // original index -> slot
  std::vector<std::size_t> start;        // size buckets + 1
  std::vector<Eigen::Vector3f> box_min, box_max;

  std::size_t count() const { return start.size() - 1; }
};

Buckets BuildBuckets(std::span<const Eigen::Vector3f> points) {
  constexpr std::size_t kPointsPerBucket = 96;
  const std::size_t n = points.size();
  Eigen::Vector3f lo = points[0];
  Eigen::Vector3f hi = points[0];
  for (const Eigen::Vector3f& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Eigen::Vector3d extent = (hi - lo).cast<double>().cwiseMax(1e-9);
  const double target = std::max(1.0, static_cast<double>(n) / kPointsPerBucket);
  const double cell = std::max(std::cbrt(extent.prod() / target), extent.maxCoeff() / 64.0);
  Eigen::Vector3i dims;
  for (int a = 0; a < 3; ++a) {
    dims[a] = std::clamp(static_cast<int>(std::ceil(extent[a] / cell)), 1, 64);
  }
  std::vector<std::size_t> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Vector3i c;
    for (int a = 0; a < 3; ++a) {
      c[a] = std::clamp(static_cast<int>((points[i][a] - lo[a]) / cell), 0, dims[a] - 1);
    }
    key[i] = (static_cast<std::size_t>(c.z()) * dims.y() + c.y()) * dims.x() + c.x();
  }
  Buckets b;
  b.original.resize(n);
  std::iota(b.original.begin(), b.original.end(), 0);
  std::stable_sort(b.original.begin(), b.original.end(),
                   [&](std::size_t i, std::size_t j) { return key[i] < key[j]; });
  b.x.resize(n);
  b.y.resize(n);
  b.z.resize(n);
  b.position_of.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t i = b.original[s];
    b.x[s] = points[i].x();
    b.y[s] = points[i].y();
    b.z[s] = points[i].z();
    b.position_of[i] = s;
    if (s == 0 || key[i] != key[b.original[s - 1]]) b.start.push_back(s);
  }
  b.start.push_back(n);
  for (std::size_t c = 0; c + 1 < b.start.size(); ++c) {
    Eigen::Vector3f mn = points[b.original[b.start[c]]];
    Eigen::Vector3f mx = mn;
    for (std::size_t s = b.start[c]; s < b.start[c + 1]; ++s) {
      const Eigen::Vector3f p(b.x[s], b.y[s], b.z[s]);
      mn = mn.cwiseMin(p);
      mx = mx.cwiseMax(p);
    }
    b.box_min.push_back(mn);
    b.box_max.push_back(mx);
  }
  return b;
}

double BoxDistance2(const Eigen::Vector3f& mn, const Eigen::Vector3f& mx, float px, float py,
                    float pz) {
  const double p[3] = {px, py, pz};
  double d2 = 0.0;
  for (int a = 0; a < 3; ++a) {
    double d = 0.0;
    if (p[a] < mn[a]) d = mn[a] - p[a];
    else if (p[a] > mx[a]) d = p[a] - mx[a];
    d2 += d * d;
  }
  return d2;
}

// Best (largest distance, lowest original index) inside one bucket. Selected
// points carry distance -1 and never win.
inline void ScanBucket(const Buckets& b, const std::vector<float>& min_d, std::size_t c,
                       float& best_d, std::size_t& best_index) {
  best_d = -1.0f;
  best_index = std::numeric_limits<std::size_t>::max();
  for (std::size_t s = b.start[c]; s < b.start[c + 1]; ++s) {
    if (min_d[s] > best_d) {
      best_d = min_d[s];
      best_index = b.original[s];
    }
  }
}

}  // namespace

std::size_t CentroidFarthestIndex(std::span<const Eigen::Vector3f> points) {
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const Eigen::Vector3f& p : points) centroid += p.cast<double>();
  centroid /= static_cast<double>(points.size());
  std::size_t best = 0;
  double best_d = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = (points[i].cast<double>() - centroid).squaredNorm();
    if (d > best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::vector<std::size_t> FarthestPointIndices(std::span<const Eigen::Vector3f> points,
                                              std::size_t n) {
  CheckSampleCount(points.size(), n);
  std::vector<std::size_t> selected;
  selected.reserve(n);
  selected.push_back(CentroidFarthestIndex(points));
  if (n == 1) return selected;

  const Buckets b = BuildBuckets(points);
  const std::size_t buckets = b.count();
  std::vector<float> min_d(points.size(), std::numeric_limits<float>::infinity());
  std::vector<float> bucket_best_d(buckets, std::numeric_limits<float>::infinity());
  std::vector<std::size_t> bucket_best_index(buckets, 0);
  min_d[b.position_of[selected[0]]] = -1.0f;

  std::size_t last = selected[0];
#pragma omp parallel
  {
    for (std::size_t k = 1; k < n; ++k) {
      const float sx = points[last].x();
      const float sy = points[last].y();
      const float sz = points[last].z();
#pragma omp for schedule(dynamic, 4)
      for (std::size_t c = 0; c < buckets; ++c) {
        // Rounding in the float distances is far below this margin.
        const double bound = BoxDistance2(b.box_min[c], b.box_max[c], sx, sy, sz);
        if (bound > static_cast<double>(bucket_best_d[c]) * (1.0 + 1e-5)) continue;
        for (std::size_t s = b.start[c]; s < b.start[c + 1]; ++s) {
          const float d = Dist2(b.x[s], b.y[s], b.z[s], sx, sy, sz);
          min_d[s] = d < min_d[s] ? d : min_d[s];
        }
        ScanBucket(b, min_d, c, bucket_best_d[c], bucket_best_index[c]);
      }
#pragma omp single
      {
        float best_d = -1.0f;
        std::size_t best_index = std::numeric_limits<std::size_t>::max();
        for (std::size_t c = 0; c < buckets; ++c) {
          if (bucket_best_d[c] > best_d ||
              (bucket_best_d[c] == best_d && bucket_best_index[c] < best_index)) {
            best_d = bucket_best_d[c];
            best_index = bucket_best_index[c];
          }
        }
        selected.push_back(best_index);
        const std::size_t slot = b.position_of[best_index];
        min_d[slot] = -1.0f;
        const std::size_t bucket =
            static_cast<std::size_t>(std::upper_bound(b.start.begin(), b.start.end(), slot) -
                                     b.start.begin()) - 1;
        ScanBucket(b, min_d, bucket, bucket_best_d[bucket], bucket_best_index[bucket]);
        last = best_index;
      }
    }
  }
  return selected;
}

namespace serial {

std::vector<std::size_t> FarthestPointIndices(std::span<const Eigen::Vector3f> points,
                                              std::size_t n) {
  CheckSampleCount(points.size(), n);
  std::vector<std::size_t> selected;
  selected.reserve(n);
  selected.push_back(CentroidFarthestIndex(points));
  std::vector<float> min_d(points.size(), std::numeric_limits<float>::infinity());
  min_d[selected[0]] = -1.0f;
  while (selected.size() < n) {
    const Eigen::Vector3f& s = points[selected.back()];
    float best_d = -1.0f;
    std::size_t best = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const float d = Dist2(points[i].x(), points[i].y(), points[i].z(), s.x(), s.y(), s.z());
      if (d < min_d[i]) min_d[i] = d;
      if (min_d[i] > best_d) {
        best_d = min_d[i];
        best = i;
      }
    }
    selected.push_back(best);
    min_d[best] = -1.0f;
  }
  return selected;
}

}  // namespace serial

SegmentedPointCloud FarthestPointSample(const SegmentedPointCloud& cloud, std::size_t n) {
  const std::vector<std::size_t> indices = FarthestPointIndices(cloud.points, n);
  return Subset(cloud, indices);
}

// ---------------------------------------------------------------------------
// DBSCAN

namespace {

// Points sorted by the key of their eps-sized cell.
class CellIndex {
 public:
  CellIndex(std::span<const Eigen::Vector3f> points, double eps)
      : points_(points), eps_(eps), order_(points.size()) {
    keys_.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) keys_[i] = KeyOf(CellOf(points[i]));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return keys_[a] < keys_[b]; });
    sorted_keys_.resize(order_.size());
    for (std::size_t s = 0; s < order_.size(); ++s) sorted_keys_[s] = keys_[order_[s]];
  }

  // Calls fn(j) for every j with |p_i - p_j| <= eps, including i.
  template <typename Fn>
  void ForEachNeighbor(std::size_t i, Fn&& fn) const {
    const Eigen::Vector3i c = CellOf(points_[i]);
    const Eigen::Vector3d p = points_[i].cast<double>();
    const double eps2 = eps_ * eps_;
    for (int dz = -1; dz <= 1; ++dz) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const uint64_t key = KeyOf(c + Eigen::Vector3i(dx, dy, dz));
          auto [first, last] = std::equal_range(sorted_keys_.begin(), sorted_keys_.end(), key);
          for (auto it = first; it != last; ++it) {
            const std::size_t j = order_[static_cast<std::size_t>(it - sorted_keys_.begin())];
            if ((points_[j].cast<double>() - p).squaredNorm() <= eps2) fn(j);
          }
        }
      }
    }
  }

 private:
  Eigen::Vector3i CellOf(const Eigen::Vector3f& p) const {
    return Eigen::Vector3i(static_cast<int>(std::floor(p.x() / eps_)),
                           static_cast<int>(std::floor(p.y() / eps_)),
                           static_cast<int>(std::floor(p.z() / eps_)));
  }
  static uint64_t KeyOf(const Eigen::Vector3i& c) {
    constexpr int64_t kBias = 1 << 20;
    const auto f = [](int v) { return static_cast<uint64_t>(v + kBias) & 0x1fffff; };
    return (f(c.x()) << 42) | (f(c.y()) << 21) | f(c.z());
  }

  std::span<const Eigen::Vector3f> points_;
  double eps_;
  std::vector<uint64_t> keys_;
  std::vector<std::size_t> order_;
  std::vector<uint64_t> sorted_keys_;
};

void CheckEps(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kInvalidArgument, "DBSCAN eps must be positive");
}

}  // namespace

std::vector<std::size_t> NeighborCounts(std::span<const Eigen::Vector3f> points, double eps) {
  CheckEps(eps);
  const CellIndex index(points, eps);
  std::vector<std::size_t> counts(points.size(), 0);
  const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < n; ++i) {
    std::size_t count = 0;
    index.ForEachNeighbor(static_cast<std::size_t>(i), [&](std::size_t) { ++count; });
    counts[i] = count;
  }
  return counts;
}

namespace serial {

std::vector<std::size_t> NeighborCounts(std::span<const Eigen::Vector3f> points, double eps) {
  CheckEps(eps);
  std::vector<std::size_t> counts(points.size(), 0);
  const double eps2 = eps * eps;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Eigen::Vector3d p = points[i].cast<double>();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if ((points[j].cast<double>() - p).squaredNorm() <= eps2) ++counts[i];
    }
  }
  return counts;
}

}  // namespace serial

std::vector<int> DbscanLabels(std::span<const Eigen::Vector3f> points, double eps,
                              std::size_t min_pts) {
  const std::vector<std::size_t> counts = NeighborCounts(points, eps);
  const CellIndex index(points, eps);
  std::vector<int> cluster(points.size(), -1);
  int next_cluster = 0;
  std::deque<std::size_t> frontier;
  for (std::size_t seed = 0; seed < points.size(); ++seed) {
    if (cluster[seed] != -1 || counts[seed] < min_pts) continue;
    const int id = next_cluster++;
    cluster[seed] = id;
    frontier.push_back(seed);
    while (!frontier.empty()) {
      const std::size_t q = frontier.front();
      frontier.pop_front();
      if (counts[q] < min_pts) continue;  // border point: reached, not expanded
      index.ForEachNeighbor(q, [&](std::size_t r) {
        if (cluster[r] == -1) {
          cluster[r] = id;
          frontier.push_back(r);
        }
      });
    }
  }
  return cluster;
}

SegmentedPointCloud DbscanFilter(const SegmentedPointCloud& cloud, double eps,
                                 std::size_t min_pts) {
  const std::vector<int> cluster = DbscanLabels(cloud.points, eps, min_pts);
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> first_index;
  for (std::size_t i = 0; i < cluster.size(); ++i) {
    if (cluster[i] < 0) continue;
    const auto id = static_cast<std::size_t>(cluster[i]);
    if (id >= sizes.size()) {
      sizes.resize(id + 1, 0);
      first_index.resize(id + 1, std::numeric_limits<std::size_t>::max());
    }
    ++sizes[id];
    first_index[id] = std::min(first_index[id], i);
  }
  if (sizes.empty()) throw Error(ErrorCode::kEmptyResult, "DBSCAN found no cluster");
  std::size_t best = 0;
  for (std::size_t c = 1; c < sizes.size(); ++c) {
    if (sizes[c] > sizes[best] || (sizes[c] == sizes[best] && first_index[c] < first_index[best])) {
      best = c;
    }
  }
  std::vector<std::size_t> keep;
  keep.reserve(sizes[best]);
  for (std::size_t i = 0; i < cluster.size(); ++i) {
    if (cluster[i] == static_cast<int>(best)) keep.push_back(i);
  }
  return Subset(cloud, keep);
}

}  // namespace demoforge::pointcloud
