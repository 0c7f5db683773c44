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

#ifndef DEMOFORGE_CORRESPONDENCE_SERVICE_BACKEND_H_
#define DEMOFORGE_CORRESPONDENCE_SERVICE_BACKEND_H_

#include <chrono>
#include <string>

#include "demoforge/correspondence/backend.h"

namespace demoforge::correspondence {

struct ServiceOptions {
  std::string url;  // scheme://host:port
  int stride = 1;
  int max_attempts = 5;  // attempts per request while the service answers 503
  std::chrono::milliseconds initial_backoff{200};
  int timeout_seconds = 60;
};

struct ServiceHealth {
  std::string model;
  int dim = 0;
};

// Sends a flat-shaded grayscale PNG of each view to POST /describe
// (multipart: "image" PNG, "params" JSON {"stride", "view"}) and decodes the
// DMAP reply. Every call opens its own connection, so calls may overlap.
class ServiceBackend : public DescriptorBackend {
 public:
  explicit ServiceBackend(ServiceOptions options);

  // Throws kBackendError when the service is unreachable or answers with an
  // error other than a transient 503.
  DescriptorMap Describe(const ViewRender& view) override;
  std::string name() const override;

  // GET /health. Throws kBackendError.
  ServiceHealth Health() const;

 private:
  ServiceOptions options_;
};

}  // namespace demoforge::correspondence

#endif  // DEMOFORGE_CORRESPONDENCE_SERVICE_BACKEND_H_
