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

#include "demoforge/pipeline/commands.h"

#include <chrono>
#include <exception>
#include <mutex>
#include <regex>
#include <sstream>

#include <spdlog/spdlog.h>

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"
#include "demoforge/common/parallel.h"
#include "demoforge/common/random.h"
#include "demoforge/correspondence/service_backend.h"
#include "demoforge/demo/annotations.h"
#include "demoforge/mesh/mesh_io.h"
#include "demoforge/pipeline/assets.h"
#include "demoforge/pipeline/scene.h"
#include "demoforge/pointcloud/assemble.h"
#include "demoforge/pointcloud/ply.h"
#include "demoforge/transfer/generate.h"

namespace demoforge::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

MeshFailure FailureOf(const std::string& mesh_id, const std::exception& e) {
  const auto* error = dynamic_cast<const Error*>(&e);
  return {mesh_id, error != nullptr ? std::string(ErrorCodeName(error->code())) : "Error",
          e.what()};
}

json FailuresToJson(const std::vector<MeshFailure>& failures) {
  json out = json::array();
  for (const MeshFailure& f : failures) {
    out.push_back({{"mesh_id", f.mesh_id}, {"error", f.error}, {"message", f.message}});
  }
  return out;
}

void CreateDirectories(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
}

void WriteJson(const json& doc, const fs::path& path) { WriteFileText(path, doc.dump(2) + "\n"); }

// Removes what an earlier generate run left in dir; nothing else is touched.
void RemoveOldArtifacts(const fs::path& dir) {
  static const std::regex kDemoDir("demo_[0-9]+");
  std::error_code ec;
  if (!fs::exists(dir)) return;
  std::vector<fs::path> doomed;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if ((entry.is_directory() && std::regex_match(name, kDemoDir)) || name == "manifest.json" ||
        name == "summary.json" || name == ".tmp") {
      doomed.push_back(entry.path());
    }
  }
  for (const fs::path& p : doomed) {
    fs::remove_all(p, ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot remove " + p.string() + ": " + ec.message());
  }
}

demo::KeypointAnnotation ReadKeypoints(const fs::path& dir, const std::string& mesh_id) {
  using correspondence::KeypointKind;
  const auto read = [&](KeypointKind kind) {
    const fs::path path = correspondence::ResultPath(dir, mesh_id, kind);
    if (!fs::exists(path)) throw Error(ErrorCode::kIoError, "missing " + path.string());
    try {
      return correspondence::ResultFromJson(json::parse(ReadFileText(path))).keypoint;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
    }
  };
  return {read(KeypointKind::kAffording), read(KeypointKind::kFunction)};
}

RobotModel BuildRobot(const RunConfig& config) {
  RobotModel robot = DefaultRobotModel();
  if (config.chain) robot.chain = kinematics::LoadChain(*config.chain);
  for (const RobotLinkConfig& link : config.robot_links) {
    robot.links.push_back(
        {std::make_shared<const mesh::TriMesh>(mesh::LoadMesh(link.mesh)), link.frame});
  }
  return robot;
}

}  // namespace

// ---------------------------------------------------------------------------
// canonicalize

CanonicalizeReport CmdCanonicalize(const RunConfig& config, const fs::path& out_dir) {
  CreateDirectories(out_dir);
  const PoseOverrides overrides = LoadOverrides(config.overrides);
  CanonicalizeReport report;
  for (const fs::path& path : config.meshes) {
    const std::string id = path.stem().string();
    try {
      std::vector<std::string> warnings;
      const mesh::TriMesh canonical = LoadCanonicalMesh(path, overrides, &warnings);
      mesh::WriteObj(canonical, out_dir / (canonical.id() + ".obj"));
      report.written.push_back(canonical.id());
      if (overrides.count(canonical.id()) > 0) report.overrides_applied.push_back(canonical.id());
      for (const std::string& w : warnings) report.warnings.push_back(id + ": " + w);
    } catch (const std::exception& e) {
      spdlog::warn("canonicalize {}: {}", id, e.what());
      report.failures.push_back(FailureOf(id, e));
    }
  }
  WriteJson(ReportToJson(report), out_dir / "canonicalize_report.json");
  return report;
}

json ReportToJson(const CanonicalizeReport& report) {
  return {{"written", report.written},
          {"overrides_applied", report.overrides_applied},
          {"failures", FailuresToJson(report.failures)},
          {"warnings", report.warnings}};
}

// ---------------------------------------------------------------------------
// correspond

std::unique_ptr<correspondence::DescriptorBackend> MakeBackend(const RunConfig& config) {
  switch (config.backend.type) {
    case BackendType::kGeometric:
      return std::make_unique<correspondence::GeometricBackend>();
    case BackendType::kFiles:
      return std::make_unique<correspondence::FileBackend>(config.backend.dir);
    case BackendType::kService: {
      correspondence::ServiceOptions options;
      options.url = config.backend.url;
      return std::make_unique<correspondence::ServiceBackend>(options);
    }
  }
  throw Error(ErrorCode::kConfigError, "unknown backend");
}

CorrespondReport CmdCorrespond(const RunConfig& config, const fs::path& out_dir) {
  if (config.source_mesh.empty() || config.source_annotations.empty()) {
    throw Error(ErrorCode::kConfigError, "correspond needs source.mesh and source.annotations");
  }
  CreateDirectories(out_dir);
  const PoseOverrides overrides = LoadOverrides(config.overrides);
  const mesh::TriMesh source = LoadCanonicalMesh(config.source_mesh, overrides);
  const demo::Annotation annotation = demo::LoadAnnotation(config.source_annotations);
  const std::unique_ptr<correspondence::DescriptorBackend> backend = MakeBackend(config);
  std::string backend_name = backend->name();
  if (const auto* service = dynamic_cast<const correspondence::ServiceBackend*>(backend.get())) {
    backend_name += " model=" + service->Health().model;
  }
  std::mutex backend_mutex;
  std::mutex* serialize = backend->thread_safe() ? nullptr : &backend_mutex;

  const correspondence::MeshViews source_views =
      correspondence::PrepareViews(source, *backend, config.rig, serialize);

  const std::size_t count = config.meshes.size();
  std::vector<std::optional<MeshFailure>> failures(count);
  std::vector<std::string> ids(count);
  ParallelFor(count, config.jobs, [&](std::size_t i) {
    ids[i] = config.meshes[i].stem().string();
    try {
      const mesh::TriMesh target = LoadCanonicalMesh(config.meshes[i], overrides);
      ids[i] = target.id();
      const correspondence::MeshViews target_views =
          correspondence::PrepareViews(target, *backend, config.rig, serialize);
      const std::pair<correspondence::KeypointKind, Eigen::Vector3d> jobs[] = {
          {correspondence::KeypointKind::kAffording, annotation.keypoints.affording_point},
          {correspondence::KeypointKind::kFunction, annotation.keypoints.function_point}};
      std::vector<json> docs;
      for (const auto& [kind, x] : jobs) {
        const correspondence::MatchResult result =
            correspondence::TransferKeypoint(source_views, x, target_views, config.rig);
        docs.push_back(correspondence::ResultToJson(result, target.id(), backend_name));
      }
      WriteJson(docs[0], correspondence::ResultPath(out_dir, target.id(), jobs[0].first));
      WriteJson(docs[1], correspondence::ResultPath(out_dir, target.id(), jobs[1].first));
    } catch (const std::exception& e) {
      failures[i] = FailureOf(ids[i], e);
    }
  });

  CorrespondReport report;
  report.backend = backend_name;
  for (std::size_t i = 0; i < count; ++i) {
    if (failures[i]) {
      spdlog::warn("correspond {}: {}", ids[i], failures[i]->message);
      report.failures.push_back(*failures[i]);
    } else {
      report.succeeded.push_back(ids[i]);
    }
  }
  WriteJson(ReportToJson(report), out_dir / "correspond_report.json");
  return report;
}

json ReportToJson(const CorrespondReport& report) {
  return {{"backend", report.backend},
          {"succeeded", report.succeeded},
          {"failures", FailuresToJson(report.failures)}};
}

// ---------------------------------------------------------------------------
// generate

GenerationAssets BuildAssets(const RunConfig& config) {
  if (config.source_dataset.empty() || config.source_annotations.empty() ||
      config.source_mesh.empty()) {
    throw Error(ErrorCode::kConfigError,
                "generate needs source.dataset, source.annotations and source.mesh");
  }
  if (config.split_meshes > static_cast<int>(config.meshes.size())) {
    throw Error(ErrorCode::kConfigError,
                "split asks for " + std::to_string(config.split_meshes) + " meshes, " +
                    std::to_string(config.meshes.size()) + " configured");
  }
  GenerationAssets assets;
  const PoseOverrides overrides = LoadOverrides(config.overrides);
  const mesh::TriMesh source_mesh = LoadCanonicalMesh(config.source_mesh, overrides);
  assets.source_mesh_id = source_mesh.id();

  const demo::Manifest source_manifest = demo::ReadManifest(config.source_dataset);
  if (config.source_demo_index < 0 ||
      config.source_demo_index >= static_cast<int>(source_manifest.demos.size())) {
    throw Error(ErrorCode::kConfigError, "source demo index out of range");
  }
  assets.source = demo::ReadDemo(config.source_dataset, source_manifest,
                                 static_cast<std::size_t>(config.source_demo_index));
  const demo::Annotation annotation =
      demo::LoadAnnotation(config.source_annotations, assets.source.size(), source_mesh);
  if (annotation.mesh_id != source_mesh.id()) {
    spdlog::warn("annotation mesh id '{}' differs from source mesh '{}'", annotation.mesh_id,
                 source_mesh.id());
  }
  demo::Demonstration& source = assets.source;
  source.skill_range = annotation.skill_range;
  source.object_pose = annotation.object_pose;
  source.keypoints = annotation.keypoints;
  source.mesh_id = source_mesh.id();
  source.t_grasp = annotation.t_grasp ? *annotation.t_grasp
                                      : demo::ExtractGraspTime(demo::GripperChannel(source));
  demo::Validate(source);

  const GoalFrameParams goal_params{config.workspace, config.dbscan_eps, config.dbscan_min_pts};
  assets.goal_frames.resize(source.steps.size());
  ParallelFor(source.steps.size(), config.jobs, [&](std::size_t t) {
    assets.goal_frames[t] = GoalPoints(source.steps[t].cloud, goal_params);
  });
  for (demo::DemoStep& step : source.steps) step.cloud = {};  // only the goal frames are kept

  for (int m = 0; m < config.split_meshes; ++m) {
    assets.meshes.push_back(LoadCanonicalMesh(config.meshes[m], overrides));
    const std::string& id = assets.meshes.back().id();
    if (id == source_mesh.id()) {
      assets.keypoints.emplace_back(annotation.keypoints);
      assets.keypoint_errors.emplace_back();
      continue;
    }
    try {
      assets.keypoints.emplace_back(ReadKeypoints(config.keypoint_dir, id));
      assets.keypoint_errors.emplace_back();
    } catch (const Error& e) {
      spdlog::warn("no keypoints for {}: {}", id, e.what());
      assets.keypoints.emplace_back(std::nullopt);
      assets.keypoint_errors.emplace_back(e.what());
    }
  }

  assets.robot = BuildRobot(config);
  const std::vector<render::Camera> cameras =
      config.scene_cameras ? render::LoadCameras(*config.scene_cameras)
                           : DefaultSceneCameras(config.scene_resolution);
  assets.cameras = Rescaled(cameras, config.scene_resolution);
  return assets;
}

demo::Demonstration GenerateTask(const GenerationAssets& assets, const RunConfig& config,
                                 int mesh_index, int pose_index, bool render_clouds) {
  const mesh::TriMesh& mesh = assets.meshes.at(mesh_index);
  if (!assets.keypoints.at(mesh_index)) {
    throw Error(ErrorCode::kIoError, assets.keypoint_errors.at(mesh_index));
  }
  const demo::KeypointAnnotation& keypoints = *assets.keypoints[mesh_index];
  const uint64_t seed = DeriveTaskSeed(config.seed, mesh.id(), static_cast<uint64_t>(pose_index));
  Rng rng(seed);
  const geometry::Pose sampled = transfer::SamplePose(config.sampler, rng);
  const geometry::Pose t_new = geometry::ShiftTranslation(
      sampled, {0.0, 0.0, RestingHeight(mesh, config.sampler.base_rotation)});

  transfer::GenerateParams params;
  params.mode = config.mode;
  params.transition_step = config.transition_step;
  params.min_steps = config.transition_min_steps;
  if (config.collision_floor_z) {
    const double floor = *config.collision_floor_z;
    params.collision_check = [floor](const geometry::Pose& p) { return p.translation().z() < floor; };
  }
  if (assets.robot.chain) params.chain = &*assets.robot.chain;
  const transfer::GeneratedTrajectory traj =
      transfer::GenerateDemo(assets.source, keypoints, t_new, params);

  demo::Demonstration out;
  out.t_grasp = traj.t_grasp;
  out.skill_range = traj.skill_range;
  out.object_pose = t_new;
  out.keypoints = keypoints;
  out.mesh_id = mesh.id();
  out.seed = seed;
  out.mesh_index = mesh_index;
  out.pose_index = pose_index;
  out.steps.resize(traj.path.size());
  for (std::size_t t = 0; t < traj.path.size(); ++t) {
    out.steps[t].ee_pose = traj.path[t].pose;
    out.steps[t].gripper = traj.path[t].gripper;
    if (!traj.joints.empty()) out.steps[t].joints = traj.joints[t];
  }

  if (render_clouds) {
    const std::vector<geometry::Pose> object_poses =
        transfer::ObjectPoses(traj.path, traj.t_grasp, t_new);
    std::vector<pointcloud::SegmentedPointCloud> sim(traj.path.size());
    for (std::size_t t = 0; t < traj.path.size(); ++t) {
      std::vector<render::SceneItem> items =
          RobotItems(assets.robot, out.steps[t].ee_pose, out.steps[t].gripper, out.steps[t].joints);
      items.push_back({&mesh, object_poses[t], kObjectInstance});
      sim[t] = RenderCloud(items, assets.cameras, &config.workspace);
    }
    pointcloud::AssembleInput input;
    input.real_goal_frames = assets.goal_frames;
    input.sim_frames = sim;
    input.source_skill = assets.source.skill_range;
    input.generated_skill = traj.skill_range;
    input.cloud_size = config.cloud_size;
    input.seed = seed;
    std::vector<pointcloud::SegmentedPointCloud> clouds = pointcloud::Assemble(input);
    for (std::size_t t = 0; t < clouds.size(); ++t) out.steps[t].cloud = std::move(clouds[t]);
  }
  demo::Validate(out);
  return out;
}

GenerateReport CmdGenerate(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const GenerationAssets assets = BuildAssets(config);
  const fs::path& out_dir = config.output;
  CreateDirectories(out_dir);
  RemoveOldArtifacts(out_dir);
  const fs::path tmp_dir = out_dir / ".tmp";
  CreateDirectories(tmp_dir);

  const int per_mesh = config.demos_per_mesh;
  const std::size_t tasks = static_cast<std::size_t>(config.split_meshes) * per_mesh;
  std::vector<std::optional<demo::ManifestEntry>> entries(tasks);
  std::vector<std::optional<TaskFailure>> failures(tasks);
  ParallelFor(tasks, config.jobs, [&](std::size_t i) {
    const int m = static_cast<int>(i) / per_mesh;
    const int k = static_cast<int>(i) % per_mesh;
    try {
      const demo::Demonstration d = GenerateTask(assets, config, m, k);
      const std::string name = "task_" + std::to_string(i);
      demo::WriteDemoFiles(d, config.cloud_size, tmp_dir / name);
      entries[i] = demo::EntryFor(d, name);
    } catch (const std::exception& e) {
      const MeshFailure f = FailureOf(assets.meshes[m].id(), e);
      failures[i] = TaskFailure{static_cast<int>(i), f.mesh_id, k, f.error, f.message};
    }
  });

  GenerateReport report;
  report.tasks = static_cast<int>(tasks);
  report.manifest.cloud_size = config.cloud_size;
  for (std::size_t i = 0; i < tasks; ++i) {
    if (failures[i]) {
      spdlog::warn("task {} ({} pose {}): {}", i, failures[i]->mesh_id, failures[i]->pose_index,
                   failures[i]->message);
      report.failures.push_back(*failures[i]);
      continue;
    }
    demo::ManifestEntry entry = *entries[i];
    const std::string name = "demo_" + std::to_string(report.manifest.demos.size());
    std::error_code ec;
    fs::rename(tmp_dir / entry.dir, out_dir / name, ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot move " + entry.dir + ": " + ec.message());
    entry.dir = name;
    report.manifest.demos.push_back(std::move(entry));
  }
  fs::remove_all(tmp_dir);
  demo::WriteManifest(report.manifest, out_dir);
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  WriteJson(SummaryToJson(report), out_dir / "summary.json");
  spdlog::info("generated {}/{} demos in {:.1f} s", report.manifest.demos.size(), tasks,
               report.seconds);
  return report;
}

json SummaryToJson(const GenerateReport& report) {
  std::map<std::string, std::pair<int, int>> per_mesh;  // ok, failed
  for (const demo::ManifestEntry& e : report.manifest.demos) ++per_mesh[e.mesh_id].first;
  json failures = json::array();
  for (const TaskFailure& f : report.failures) {
    ++per_mesh[f.mesh_id].second;
    failures.push_back({{"task", f.task},
                        {"mesh_id", f.mesh_id},
                        {"pose_index", f.pose_index},
                        {"error", f.error},
                        {"message", f.message}});
  }
  json meshes = json::object();
  for (const auto& [id, counts] : per_mesh) {
    meshes[id] = {{"ok", counts.first}, {"failed", counts.second}};
  }
  // Wall time is left out so reruns produce identical files.
  return {{"tasks", report.tasks},
          {"succeeded", report.manifest.demos.size()},
          {"failed", report.failures.size()},
          {"meshes", meshes},
          {"failures", failures}};
}

// ---------------------------------------------------------------------------
// inspect

InspectResult CmdInspect(const fs::path& dataset, int demo_index, int frame,
                         const fs::path& out_dir) {
  const demo::Manifest manifest = demo::ReadManifest(dataset);
  if (demo_index < 0 || demo_index >= static_cast<int>(manifest.demos.size())) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "demo " + std::to_string(demo_index) + " not in [0, " +
                    std::to_string(manifest.demos.size()) + ")");
  }
  const demo::ManifestEntry& entry = manifest.demos[demo_index];
  const pointcloud::SegmentedPointCloud cloud =
      demo::ReadFrame(dataset, manifest, static_cast<std::size_t>(demo_index), frame);

  InspectResult result;
  CreateDirectories(out_dir);
  result.ply = out_dir / ("demo_" + std::to_string(demo_index) + "_frame_" +
                          std::to_string(frame) + ".ply");
  pointcloud::WriteAsciiPly(cloud, result.ply);
  result.histogram = pointcloud::LabelHistogram(cloud);

  static constexpr const char* kStageNames[] = {"grasp", "skill", "transition"};
  const demo::Stage stage = demo::StageOf(frame, entry.t_grasp, entry.skill_range);
  const auto vec = [](const Eigen::Vector3d& v) {
    std::ostringstream s;
    s << "[" << v.x() << ", " << v.y() << ", " << v.z() << "]";
    return s.str();
  };
  const std::array<double, 7> pose = geometry::ToArray(entry.pose);
  std::ostringstream s;
  s << "demo " << demo_index << " (" << entry.dir << ") mesh " << entry.mesh_id << "\n"
    << "steps " << entry.steps << ", frame " << frame << " stage "
    << kStageNames[static_cast<int>(stage)] << "\n"
    << "t_grasp " << entry.t_grasp << ", skill [" << entry.skill_range.begin << ", "
    << entry.skill_range.end << "]\n"
    << "affording " << vec(entry.keypoints.affording_point) << ", function "
    << vec(entry.keypoints.function_point) << "\n"
    << "object pose [" << pose[0];
  for (int i = 1; i < 7; ++i) s << ", " << pose[i];
  s << "]\n"
    << "points " << cloud.size() << ": robot " << result.histogram[0] << ", object "
    << result.histogram[1] << ", goal " << result.histogram[2] << ", other "
    << result.histogram[3] << "\n"
    << "ply " << result.ply.string() << "\n";
  result.summary = s.str();
  return result;
}

}  // namespace demoforge::pipeline
