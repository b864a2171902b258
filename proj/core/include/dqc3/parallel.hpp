// Copyright 2026 The dqc3 Authors
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

#ifndef DQC3_PARALLEL_HPP
#define DQC3_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace dqc3 {

/// Worker count: `requested` when non-zero, else the DQC3_THREADS environment variable
/// when set and non-zero, else the hardware concurrency. Always at least 1.
unsigned thread_count(unsigned requested = 0);

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Work items are claimed in
/// order; the first exception thrown is rethrown after all workers stop.
void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)> &fn);

}  // namespace dqc3

#endif  // DQC3_PARALLEL_HPP
