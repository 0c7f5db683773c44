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

#include "demoforge/common/log.h"

#include <cstdlib>
#include <string_view>

namespace demoforge {

void InitLoggingFromEnv() {
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("DEMOFORGE_LOG")) {
    const std::string_view value(env);
    if (value == "error") level = spdlog::level::err;
    else if (value == "warn") level = spdlog::level::warn;
    else if (value == "info") level = spdlog::level::info;
    else if (value == "debug") level = spdlog::level::debug;
  }
  spdlog::set_level(level);
}

}  // namespace demoforge
