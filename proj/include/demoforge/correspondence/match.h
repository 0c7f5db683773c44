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

#ifndef DEMOFORGE_CORRESPONDENCE_MATCH_H_
#define DEMOFORGE_CORRESPONDENCE_MATCH_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "demoforge/correspondence/descriptor_map.h"

namespace demoforge::correspondence {

// Bilinear interpolation of the descriptor at sub-pixel `pixel`, using only
// taps on the mask (row-major, 1 = foreground) and renormalizing their
// weights. Throws kEmptyMask when no tap is on the mask.
std::vector<float> SampleBilinear(const DescriptorMap& map, const Eigen::Vector2d& pixel,
                                  std::span<const uint8_t> mask);

// Target map prepared for repeated queries: unit-length descriptors and the
// foreground pixel list in row-major order.
class MatchTarget {
 public:
  // Throws kEmptyMask when the mask has no foreground pixel.
  MatchTarget(const DescriptorMap& map, std::span<const uint8_t> mask);

  int width() const { return width_; }
  int dim() const { return dim_; }
  const std::vector<uint32_t>& candidates() const { return candidates_; }
  const float* unit(std::size_t candidate) const { return unit_.data() + candidate * dim_; }

 private:
  int width_;
  int dim_;
  std::vector<uint32_t> candidates_;
  std::vector<float> unit_;  // per candidate, zero vector when the descriptor is zero
};

struct PixelMatch {
  Eigen::Vector2i pixel = Eigen::Vector2i::Zero();
  double weight = 0.0;  // cosine similarity in [-1, 1]
};

// Argmax of the cosine similarity over the target foreground, ties to the
// first pixel in row-major order. A zero query or target vector scores 0.
// Candidates are scanned in parallel.
PixelMatch MatchDescriptor(std::span<const float> query, const MatchTarget& target);

// Source descriptor sampled at `pixel` (see SampleBilinear), then matched.
PixelMatch MatchPixel(const DescriptorMap& source, std::span<const uint8_t> source_mask,
                      const Eigen::Vector2d& pixel, const MatchTarget& target);

namespace serial {
PixelMatch MatchDescriptor(std::span<const float> query, const MatchTarget& target);
}  // namespace serial

}  // namespace demoforge::correspondence

#endif  // DEMOFORGE_CORRESPONDENCE_MATCH_H_
