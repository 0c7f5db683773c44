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

#include "demoforge/correspondence/service_backend.h"

#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "demoforge/common/error.h"
#include "demoforge/correspondence/png.h"
#include "demoforge/render/rasterizer.h"

namespace demoforge::correspondence {
namespace {

httplib::Client MakeClient(const ServiceOptions& options) {
  httplib::Client client(options.url);
  client.set_connection_timeout(options.timeout_seconds, 0);
  client.set_read_timeout(options.timeout_seconds, 0);
  client.set_write_timeout(options.timeout_seconds, 0);
  return client;
}

}  // namespace

ServiceBackend::ServiceBackend(ServiceOptions options) : options_(std::move(options)) {
  if (options_.url.empty()) throw Error(ErrorCode::kConfigError, "service backend needs a url");
  if (options_.max_attempts < 1) options_.max_attempts = 1;
}

std::string ServiceBackend::name() const { return "service:" + options_.url; }

ServiceHealth ServiceBackend::Health() const {
  httplib::Client client = MakeClient(options_);
  const httplib::Result result = client.Get("/health");
  if (!result) {
    throw Error(ErrorCode::kBackendError,
                options_.url + "/health: " + httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw Error(ErrorCode::kBackendError,
                options_.url + "/health answered " + std::to_string(result->status));
  }
  try {
    const nlohmann::json doc = nlohmann::json::parse(result->body);
    return {doc.value("model", ""), doc.value("dim", 0)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBackendError, std::string("/health reply: ") + e.what());
  }
}

DescriptorMap ServiceBackend::Describe(const ViewRender& view) {
  const render::SceneItem item{view.mesh, geometry::Pose::Identity(), 0};
  const std::vector<uint8_t> gray =
      render::ShadeGray(view.depth, std::span<const render::SceneItem>(&item, 1), view.camera);
  const std::vector<uint8_t> png = EncodeGrayPng(view.depth.width, view.depth.height, gray);
  const nlohmann::json params = {{"stride", options_.stride}, {"view", view.view_index}};
  const httplib::MultipartFormDataItems items = {
      {"image", std::string(png.begin(), png.end()), "view.png", "image/png"},
      {"params", params.dump(), "", "application/json"},
  };

  httplib::Client client = MakeClient(options_);
  std::chrono::milliseconds backoff = options_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    const httplib::Result result = client.Post("/describe", items);
    if (!result) {
      throw Error(ErrorCode::kBackendError,
                  options_.url + "/describe: " + httplib::to_string(result.error()));
    }
    if (result->status == 503 && attempt < options_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
      continue;
    }
    if (result->status != 200) {
      throw Error(ErrorCode::kBackendError, options_.url + "/describe answered " +
                                                std::to_string(result->status) + " after " +
                                                std::to_string(attempt) + " attempt(s)");
    }
    const std::string& body = result->body;
    DescriptorMap map;
    try {
      map = DecodeDmap(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(body.data()),
                                                body.size()));
    } catch (const Error& e) {
      throw Error(ErrorCode::kBackendError, std::string("/describe reply: ") + e.what());
    }
    if (map.height != view.depth.height || map.width != view.depth.width) {
      throw Error(ErrorCode::kBackendError, "/describe reply does not match the render size");
    }
    map.camera = view.camera;
    return map;
  }
}

}  // namespace demoforge::correspondence
