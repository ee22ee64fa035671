// Copyright 2026 The LoI Workbench Authors
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

#ifndef LOI_COMMON_PARALLEL_H_
#define LOI_COMMON_PARALLEL_H_

#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <cstddef>

namespace loi {

// Runs body(i) for i in [0, n). With jobs <= 1 the loop is serial and in
// index order. Callers write results into pre-sized slots indexed by i, which
// keeps the output independent of scheduling. Exceptions propagate.
template <typename Body>
void ParallelFor(std::size_t n, int jobs, Body&& body) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  tbb::task_arena arena(jobs);
  arena.execute([&] {
    tbb::parallel_for(std::size_t{0}, n, [&](std::size_t i) { body(i); });
  });
}

}  // namespace loi

#endif  // LOI_COMMON_PARALLEL_H_
