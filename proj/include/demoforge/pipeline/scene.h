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

#ifndef DEMOFORGE_PIPELINE_SCENE_H_
#define DEMOFORGE_PIPELINE_SCENE_H_

#include <span>
#include <vector>

#include "demoforge/pointcloud/point_cloud.h"
#include "demoforge/render/camera.h"
#include "demoforge/render/rasterizer.h"

namespace demoforge::pipeline {

// Two fixed cameras framing the tabletop around (0.5, 0, 0.08), one from
// each side, with a 60 degree field of view.
std::vector<render::Camera> DefaultSceneCameras(int resolution);

// Same poses and field of view at another square resolution.
std::vector<render::Camera> Rescaled(std::span<const render::Camera> cameras, int resolution);

// Renders the items from every camera and unprojects each foreground pixel.
// Labels follow the item instance (instance ids equal label values). Points
// outside the workspace are dropped; the result may be empty.
pointcloud::SegmentedPointCloud RenderCloud(std::span<const render::SceneItem> items,
                                            std::span<const render::Camera> cameras,
                                            const pointcloud::Workspace* workspace);

}  // namespace demoforge::pipeline

#endif  // DEMOFORGE_PIPELINE_SCENE_H_
