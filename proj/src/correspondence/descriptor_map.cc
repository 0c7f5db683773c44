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

#include "demoforge/correspondence/descriptor_map.h"

#include <cmath>
#include <cstring>
#include <string>

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"

namespace demoforge::correspondence {
namespace {

constexpr char kMagic[4] = {'D', 'M', 'A', 'P'};
constexpr std::size_t kHeaderSize = 16;
constexpr uint32_t kMaxSide = 1 << 14;
constexpr uint32_t kMaxDim = 1 << 16;

}  // namespace

void Validate(const DescriptorMap& map, std::span<const uint8_t> mask) {
  if (map.data.size() != map.pixel_count() * map.dim || map.dim < 1) {
    throw Error(ErrorCode::kInvalidArgument, "descriptor map shape mismatch");
  }
  for (std::size_t p = 0; p < map.pixel_count(); ++p) {
    const float* d = map.data.data() + p * map.dim;
    bool nonzero = false;
    for (int k = 0; k < map.dim; ++k) {
      if (!std::isfinite(d[k])) {
        throw Error(ErrorCode::kInvalidArgument, "non-finite descriptor at pixel " + std::to_string(p));
      }
      nonzero |= d[k] != 0.0f;
    }
    if (!mask.empty() && mask[p] && !nonzero) {
      throw Error(ErrorCode::kInvalidArgument, "zero descriptor on foreground pixel " +
                                                   std::to_string(p));
    }
  }
}

std::vector<uint8_t> EncodeDmap(const DescriptorMap& map) {
  std::vector<uint8_t> bytes(kMagic, kMagic + 4);
  bytes.reserve(kHeaderSize + map.data.size() * sizeof(float));
  AppendLe(bytes, static_cast<uint32_t>(map.height));
  AppendLe(bytes, static_cast<uint32_t>(map.width));
  AppendLe(bytes, static_cast<uint32_t>(map.dim));
  for (const float v : map.data) AppendLe(bytes, v);
  return bytes;
}

DescriptorMap DecodeDmap(std::span<const uint8_t> bytes) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kParseError, "not a DMAP file");
  }
  const uint32_t h = ReadLe<uint32_t>(bytes, 4);
  const uint32_t w = ReadLe<uint32_t>(bytes, 8);
  const uint32_t d = ReadLe<uint32_t>(bytes, 12);
  if (h == 0 || w == 0 || d == 0 || h > kMaxSide || w > kMaxSide || d > kMaxDim) {
    throw Error(ErrorCode::kParseError, "bad DMAP header " + std::to_string(h) + "x" +
                                            std::to_string(w) + "x" + std::to_string(d));
  }
  const std::size_t count = static_cast<std::size_t>(h) * w * d;
  if (bytes.size() != kHeaderSize + count * sizeof(float)) {
    throw Error(ErrorCode::kParseError, "DMAP payload length does not match its header");
  }
  DescriptorMap map(static_cast<int>(h), static_cast<int>(w), static_cast<int>(d));
  std::memcpy(map.data.data(), bytes.data() + kHeaderSize, count * sizeof(float));
  return map;
}

DescriptorMap ReadDmap(const std::filesystem::path& path) {
  try {
    return DecodeDmap(ReadFileBytes(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) {
      throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
    }
    throw;
  }
}

void WriteDmap(const DescriptorMap& map, const std::filesystem::path& path) {
  WriteFileBytes(path, EncodeDmap(map));
}

}  // namespace demoforge::correspondence
