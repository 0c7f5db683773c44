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

#ifndef DEMOFORGE_COMMON_PARALLEL_H_
#define DEMOFORGE_COMMON_PARALLEL_H_

#include <cstddef>

namespace demoforge {

// Number of OpenMP threads a top-level parallel region would use.
int MaxThreads();

// Runs body(i) for i in [0, count) on `threads` OpenMP threads with dynamic
// scheduling. body must not throw.
template <typename Body>
void ParallelFor(std::size_t count, int threads, Body&& body) {
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace demoforge

#endif  // DEMOFORGE_COMMON_PARALLEL_H_
