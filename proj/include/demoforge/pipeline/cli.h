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

#ifndef DEMOFORGE_PIPELINE_CLI_H_
#define DEMOFORGE_PIPELINE_CLI_H_

namespace demoforge::cli {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitTotalFailure = 3;

// demoforge <canonicalize|correspond|generate|inspect> [options]
int Run(int argc, char** argv);

}  // namespace demoforge::cli

#endif  // DEMOFORGE_PIPELINE_CLI_H_
