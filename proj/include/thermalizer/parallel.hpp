// Copyright 2026 The Thermalizer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace thermalizer {

/// Worker count: THERMALIZER_THREADS if set, else hardware concurrency.
unsigned default_workers();

/// Runs task(i) for i in [0, count) on a bounded pool. Tasks must write to
/// disjoint outputs; the first exception is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task, unsigned workers = 0);

}  // namespace thermalizer
