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

#ifndef DEMOFORGE_COMMON_LOG_H_
#define DEMOFORGE_COMMON_LOG_H_

#include <spdlog/spdlog.h>

namespace demoforge {

// Applies DEMOFORGE_LOG (error|warn|info|debug) to the default logger.
// Unset or unknown values leave the level at warn.
void InitLoggingFromEnv();

}  // namespace demoforge

#endif  // DEMOFORGE_COMMON_LOG_H_
