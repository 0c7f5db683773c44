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

#ifndef DEMOFORGE_COMMON_RANDOM_H_
#define DEMOFORGE_COMMON_RANDOM_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace demoforge {

// SplitMix64 finalizer. Used to derive independent, order-free seeds.
constexpr uint64_t MixBits(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr uint64_t HashCombine(uint64_t seed, uint64_t value) {
  return MixBits(seed ^ MixBits(value));
}

// FNV-1a over the bytes of a string.
constexpr uint64_t HashString(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Seed of a single generation task: hash(master_seed, mesh_id, pose_index).
inline uint64_t DeriveTaskSeed(uint64_t master_seed, std::string_view mesh_id,
                               uint64_t pose_index) {
  return HashCombine(HashCombine(master_seed, HashString(mesh_id)), pose_index);
}

// Portable generator: the mt19937_64 bit stream is fixed by the standard and
// the conversions below avoid the implementation-defined std distributions,
// so sample sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextBits() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi]; returns lo when the interval is degenerate.
  double Uniform(double lo, double hi) {
    if (!(hi > lo)) return lo;
    return lo + (hi - lo) * Uniform();
  }

  // Uniform integer in [0, n). n must be positive.
  std::size_t Index(std::size_t n) {
    // Lemire's multiply-shift with rejection.
    const uint64_t range = n;
    uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * range;
    uint64_t low = static_cast<uint64_t>(m);
    if (low < range) {
      const uint64_t threshold = (0 - range) % range;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * range;
        low = static_cast<uint64_t>(m);
      }
    }
    return static_cast<std::size_t>(m >> 64);
  }

  // Standard normal via Box-Muller.
  double Gaussian() {
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace demoforge

#endif  // DEMOFORGE_COMMON_RANDOM_H_
