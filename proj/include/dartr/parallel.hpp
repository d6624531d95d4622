/*
 * Copyright 2026 The dartr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <functional>

namespace dartr {

/// Worker count: DARTR_THREADS if set to a positive integer, else the
/// hardware concurrency, never more than `tasks` and at least one.
std::size_t worker_count(std::size_t tasks);

/// Calls body(i) for i in [0, count) on up to worker_count(count) threads.
/// Each index runs exactly once; callers write results into slot i so the
/// outcome does not depend on scheduling. The first exception is rethrown
/// after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace dartr
