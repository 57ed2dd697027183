// Copyright 2026 The opmean authors
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

#pragma once

#include <cstddef>
#include <functional>

namespace opmean {

/// Blocking parallel map over [0, count). The body must be pure with respect
/// to shared state apart from writes to distinct indices, so the result is
/// independent of the thread interleaving. Worker count comes from the
/// config (OPMEAN_THREADS via the CLI; hardware concurrency otherwise).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace opmean
