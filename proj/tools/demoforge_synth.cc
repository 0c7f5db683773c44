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

// Writes a synthetic asset set: a randomized vessel family, a scripted
// source demonstration with its annotation, and a matching run config.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "demoforge/common/error.h"
#include "demoforge/common/log.h"
#include "demoforge/synth/synth.h"

int main(int argc, char** argv) {
  demoforge::InitLoggingFromEnv();
  CLI::App app{"demoforge_synth: synthetic meshes, source demo and run config"};
  std::string out;
  demoforge::synth::SynthOptions options;
  app.add_option("--out", out, "output directory")->required();
  app.add_option("--meshes", options.meshes, "number of meshes")->check(CLI::PositiveNumber);
  app.add_option("--demos-per-mesh", options.demos_per_mesh, "demos per mesh in the config");
  app.add_option("--seed", options.seed, "asset seed");
  CLI11_PARSE(app, argc, argv);
  try {
    const demoforge::synth::SynthLayout layout = demoforge::synth::WriteSynthAssets(out, options);
    std::cout << "config " << layout.config.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
