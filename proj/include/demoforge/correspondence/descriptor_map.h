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

#ifndef DEMOFORGE_CORRESPONDENCE_DESCRIPTOR_MAP_H_
#define DEMOFORGE_CORRESPONDENCE_DESCRIPTOR_MAP_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "demoforge/render/camera.h"

namespace demoforge::correspondence {

// Dense per-pixel features, row-major H x W x D.
struct DescriptorMap {
  int height = 0;
  int width = 0;
  int dim = 0;
  std::vector<float> data;
  render::Camera camera;

  DescriptorMap() = default;
  DescriptorMap(int h, int w, int d)
      : height(h), width(w), dim(d), data(static_cast<std::size_t>(h) * w * d, 0.0f) {}

  std::size_t pixel_count() const { return static_cast<std::size_t>(height) * width; }
  float* at(int u, int v) { return data.data() + (static_cast<std::size_t>(v) * width + u) * dim; }
  const float* at(int u, int v) const {
    return data.data() + (static_cast<std::size_t>(v) * width + u) * dim;
  }
};

// Throws kInvalidArgument for non-finite values, or for an all-zero vector
// on a pixel where mask (row-major, may be empty) is set.
void Validate(const DescriptorMap& map, std::span<const uint8_t> mask = {});

// "DMAP", u32 H, u32 W, u32 D, then H*W*D float32, all little-endian.
std::vector<uint8_t> EncodeDmap(const DescriptorMap& map);
// Throws kParseError on a bad magic, header, or length.
DescriptorMap DecodeDmap(std::span<const uint8_t> bytes);
DescriptorMap ReadDmap(const std::filesystem::path& path);
void WriteDmap(const DescriptorMap& map, const std::filesystem::path& path);

}  // namespace demoforge::correspondence

#endif  // DEMOFORGE_CORRESPONDENCE_DESCRIPTOR_MAP_H_
