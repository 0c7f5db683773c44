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

#ifndef DEMOFORGE_CORRESPONDENCE_PNG_H_
#define DEMOFORGE_CORRESPONDENCE_PNG_H_

#include <cstdint>
#include <span>
#include <vector>

namespace demoforge::correspondence {

// 8-bit grayscale PNG (no filtering, zlib-compressed IDAT).
std::vector<uint8_t> EncodeGrayPng(int width, int height, std::span<const uint8_t> pixels);

}  // namespace demoforge::correspondence

#endif  // DEMOFORGE_CORRESPONDENCE_PNG_H_
