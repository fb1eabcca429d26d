// Copyright 2026 The ginv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GINV_PARALLEL_HPP
#define GINV_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <functional>

namespace ginv {

/// Worker cap: GINV_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls body(chunk, begin, end) for every chunk of [0, count) split into
/// pieces of `chunk_size`. Chunk boundaries depend only on count and
/// chunk_size, so per-chunk seeds derived from the chunk index give results
/// independent of the worker count. The first exception thrown is rethrown.
void parallel_chunks(std::size_t count, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace ginv

#endif  // GINV_PARALLEL_HPP
