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

#include "demoforge/correspondence/match.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <omp.h>

#include "demoforge/common/error.h"

namespace demoforge::correspondence {
namespace {

std::vector<float> UnitQuery(std::span<const float> query) {
  double norm2 = 0.0;
  for (const float v : query) norm2 += static_cast<double>(v) * v;
  std::vector<float> unit(query.size(), 0.0f);
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t k = 0; k < query.size(); ++k) unit[k] = static_cast<float>(query[k] * inv);
  }
  return unit;
}

inline double Dot(const float* a, const float* b, int dim) {
  double sum = 0.0;
  for (int k = 0; k < dim; ++k) sum += static_cast<double>(a[k]) * b[k];
  return sum;
}

struct Best {
  double score = -std::numeric_limits<double>::infinity();
  std::size_t candidate = std::numeric_limits<std::size_t>::max();

  // Candidates are in row-major order, so the lower index wins ties.
  void Offer(double s, std::size_t c) {
    if (s > score || (s == score && c < candidate)) {
      score = s;
      candidate = c;
    }
  }
};

PixelMatch ToMatch(const MatchTarget& target, const Best& best) {
  const uint32_t pixel = target.candidates()[best.candidate];
  PixelMatch match;
  match.pixel = Eigen::Vector2i(static_cast<int>(pixel % target.width()),
                                static_cast<int>(pixel / target.width()));
  match.weight = std::clamp(best.score, -1.0, 1.0);
  return match;
}

void CheckQuery(std::span<const float> query, const MatchTarget& target) {
  if (static_cast<int>(query.size()) != target.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "descriptor dimensions differ between maps");
  }
}

}  // namespace

std::vector<float> SampleBilinear(const DescriptorMap& map, const Eigen::Vector2d& pixel,
                                  std::span<const uint8_t> mask) {
  const int u0 = static_cast<int>(std::floor(pixel.x()));
  const int v0 = static_cast<int>(std::floor(pixel.y()));
  const double fu = pixel.x() - u0;
  const double fv = pixel.y() - v0;
  std::vector<double> sum(map.dim, 0.0);
  double total = 0.0;
  for (int dv = 0; dv <= 1; ++dv) {
    for (int du = 0; du <= 1; ++du) {
      const int u = u0 + du;
      const int v = v0 + dv;
      const double w = (du ? fu : 1.0 - fu) * (dv ? fv : 1.0 - fv);
      if (w <= 0.0 || u < 0 || v < 0 || u >= map.width || v >= map.height) continue;
      if (!mask[static_cast<std::size_t>(v) * map.width + u]) continue;
      const float* d = map.at(u, v);
      for (int k = 0; k < map.dim; ++k) sum[k] += w * d[k];
      total += w;
    }
  }
  if (!(total > 0.0)) throw Error(ErrorCode::kEmptyMask, "no foreground tap around the pixel");
  std::vector<float> out(map.dim);
  for (int k = 0; k < map.dim; ++k) out[k] = static_cast<float>(sum[k] / total);
  return out;
}

MatchTarget::MatchTarget(const DescriptorMap& map, std::span<const uint8_t> mask)
    : width_(map.width), dim_(map.dim) {
  for (std::size_t p = 0; p < map.pixel_count(); ++p) {
    if (!mask[p]) continue;
    candidates_.push_back(static_cast<uint32_t>(p));
    const std::vector<float> unit =
        UnitQuery(std::span<const float>(map.data.data() + p * dim_, dim_));
    unit_.insert(unit_.end(), unit.begin(), unit.end());
  }
  if (candidates_.empty()) throw Error(ErrorCode::kEmptyMask, "target mask is empty");
}

PixelMatch MatchDescriptor(std::span<const float> query, const MatchTarget& target) {
  CheckQuery(query, target);
  const std::vector<float> q = UnitQuery(query);
  const long count = static_cast<long>(target.candidates().size());
  Best best;
#pragma omp parallel
  {
    Best local;
#pragma omp for schedule(static) nowait
    for (long c = 0; c < count; ++c) local.Offer(Dot(q.data(), target.unit(c), target.dim()), c);
#pragma omp critical
    best.Offer(local.score, local.candidate);
  }
  return ToMatch(target, best);
}

namespace serial {

PixelMatch MatchDescriptor(std::span<const float> query, const MatchTarget& target) {
  CheckQuery(query, target);
  const std::vector<float> q = UnitQuery(query);
  Best best;
  for (std::size_t c = 0; c < target.candidates().size(); ++c) {
    best.Offer(Dot(q.data(), target.unit(c), target.dim()), c);
  }
  return ToMatch(target, best);
}

}  // namespace serial

PixelMatch MatchPixel(const DescriptorMap& source, std::span<const uint8_t> source_mask,
                      const Eigen::Vector2d& pixel, const MatchTarget& target) {
  return MatchDescriptor(SampleBilinear(source, pixel, source_mask), target);
}

}  // namespace demoforge::correspondence
