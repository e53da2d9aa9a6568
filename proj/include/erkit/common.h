// Copyright 2026 The erkit Authors.
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

#ifndef ERKIT_COMMON_H_
#define ERKIT_COMMON_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace erkit {

// Invalid input, configuration or precondition. The CLI maps this to exit
// code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure while executing a stage on otherwise valid input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { kDedup, kLink };

const char *ModeName(Mode mode);
Mode ParseMode(const std::string &name);

// Runs fn(begin, end) over [0, n) split into contiguous chunks. Chunk
// boundaries depend only on n and the chunk count, never on scheduling, so
// callers that write results by index get identical output for any worker
// count.
void ParallelFor(size_t n, int workers,
                 const std::function<void(size_t begin, size_t end)> &fn);

// Runs fn(i) for every i in [0, n), distributing indices dynamically.
void ParallelEach(size_t n, int workers, const std::function<void(size_t)> &fn);

int ResolveWorkers(int requested);

}  // namespace erkit

#endif  // ERKIT_COMMON_H_
