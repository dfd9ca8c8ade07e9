/*
 * Copyright 2026 The cusp Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
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

namespace cusp {

/// Worker count used by parallel loops; 0 means hardware concurrency.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs body(i) for i in [0, n), statically partitioned into contiguous
/// blocks. Each index is processed by exactly one thread, so results stored
/// per index do not depend on the thread count. The first exception thrown
/// by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cusp
