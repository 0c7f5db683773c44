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

#include "demoforge/pipeline/cli.h"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "demoforge/common/error.h"
#include "demoforge/common/log.h"
#include "demoforge/pipeline/commands.h"
#include "demoforge/pipeline/config.h"

namespace demoforge::cli {
namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string config;
  std::string out;
  std::optional<uint64_t> seed;
  std::optional<int> jobs;
};

void AddCommon(CLI::App* app, CommonOptions& options, bool config_required) {
  CLI::Option* config = app->add_option("--config", options.config, "run config JSON");
  if (config_required) config->required();
  config->check(CLI::ExistingFile);
  app->add_option("--out", options.out, "output directory");
  app->add_option("--seed", options.seed, "master seed");
  app->add_option("--jobs", options.jobs, "worker count")->check(CLI::PositiveNumber);
}

pipeline::RunConfig LoadWithOverrides(const CommonOptions& options) {
  pipeline::RunConfig config = pipeline::LoadRunConfig(options.config);
  if (options.seed) config.seed = *options.seed;
  if (options.jobs) config.jobs = *options.jobs;
  pipeline::Validate(config);
  return config;
}

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kConfigError:
    case ErrorCode::kParseError:
    case ErrorCode::kIndexOutOfRange:
      return kExitConfigError;
    default:
      return kExitFailure;
  }
}

}  // namespace

int Run(int argc, char** argv) {
  InitLoggingFromEnv();
  CLI::App app{"demoforge: demonstration generation toolchain"};
  app.require_subcommand(1);

  CommonOptions canon_opts;
  CLI::App* canonicalize = app.add_subcommand("canonicalize", "align meshes to a canonical pose");
  AddCommon(canonicalize, canon_opts, true);

  CommonOptions corr_opts;
  CLI::App* correspond = app.add_subcommand("correspond", "transfer keypoints onto target meshes");
  AddCommon(correspond, corr_opts, true);

  CommonOptions gen_opts;
  CLI::App* generate = app.add_subcommand("generate", "generate a demonstration dataset");
  AddCommon(generate, gen_opts, true);

  CommonOptions insp_opts;
  std::string dataset;
  int demo_index = 0;
  int frame = 0;
  CLI::App* inspect = app.add_subcommand("inspect", "dump one frame as PLY with a summary");
  AddCommon(inspect, insp_opts, false);
  inspect->add_option("--dataset", dataset, "dataset directory (default: config output)");
  inspect->add_option("--demo", demo_index, "demo index");
  inspect->add_option("--frame", frame, "frame index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (canonicalize->parsed()) {
      const pipeline::RunConfig config = LoadWithOverrides(canon_opts);
      const fs::path out = canon_opts.out.empty() ? config.output / "canonical" : fs::path(canon_opts.out);
      const pipeline::CanonicalizeReport report = pipeline::CmdCanonicalize(config, out);
      std::cout << pipeline::ReportToJson(report).dump(2) << "\n";
      return report.written.empty() && !report.failures.empty() ? kExitTotalFailure : kExitOk;
    }
    if (correspond->parsed()) {
      const pipeline::RunConfig config = LoadWithOverrides(corr_opts);
      const fs::path out = corr_opts.out.empty() ? config.keypoint_dir : fs::path(corr_opts.out);
      const pipeline::CorrespondReport report = pipeline::CmdCorrespond(config, out);
      std::cout << pipeline::ReportToJson(report).dump(2) << "\n";
      return report.succeeded.empty() && !report.failures.empty() ? kExitTotalFailure : kExitOk;
    }
    if (generate->parsed()) {
      pipeline::RunConfig config = LoadWithOverrides(gen_opts);
      if (!gen_opts.out.empty()) config.output = gen_opts.out;
      const pipeline::GenerateReport report = pipeline::CmdGenerate(config);
      std::cout << "generated " << report.manifest.demos.size() << "/" << report.tasks
                << " demos into " << config.output.string() << " (" << report.seconds
                << " s)\n";
      return report.tasks > 0 && report.manifest.demos.empty() ? kExitTotalFailure : kExitOk;
    }
    if (inspect->parsed()) {
      fs::path dir = dataset;
      if (dir.empty()) {
        if (insp_opts.config.empty()) {
          std::cerr << "inspect needs --dataset or --config\n";
          return kExitConfigError;
        }
        dir = LoadWithOverrides(insp_opts).output;
      }
      const fs::path out = insp_opts.out.empty() ? dir / "inspect" : fs::path(insp_opts.out);
      const pipeline::InspectResult result = pipeline::CmdInspect(dir, demo_index, frame, out);
      std::cout << result.summary;
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace demoforge::cli
