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

#include "erkit/common.h"

#include <atomic>
#include <exception>
#include <mutex>

namespace erkit {

const char *ModeName(Mode mode) {
  return mode == Mode::kDedup ? "dedup" : "link";
}

Mode ParseMode(const std::string &name) {
  if (name == "dedup") return Mode::kDedup;
  if (name == "link") return Mode::kLink;
  throw UsageError("unknown mode '" + name + "' (expected dedup or link)");
}

int ResolveWorkers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Joins the threads and rethrows the first captured exception.
class ThreadGroup {
 public:
  template <typename F>
  void Spawn(F &&f) {
    threads_.emplace_back([this, f = std::forward<F>(f)]() {
      try {
        f();
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!error_) error_ = std::current_exception();
      }
    });
  }

  void Join() {
    for (auto &t : threads_) t.join();
    threads_.clear();
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::exception_ptr error_;
};

}  // namespace

void ParallelFor(size_t n, int workers,
                 const std::function<void(size_t, size_t)> &fn) {
  if (n == 0) return;
  workers = ResolveWorkers(workers);
  if (workers <= 1 || n == 1) {
    fn(0, n);
    return;
  }
  size_t chunks = std::min<size_t>(static_cast<size_t>(workers), n);
  ThreadGroup group;
  for (size_t c = 0; c < chunks; ++c) {
    size_t begin = n * c / chunks;
    size_t end = n * (c + 1) / chunks;
    group.Spawn([&fn, begin, end]() { fn(begin, end); });
  }
  group.Join();
}

void ParallelEach(size_t n, int workers, const std::function<void(size_t)> &fn) {
  if (n == 0) return;
  workers = ResolveWorkers(workers);
  if (workers <= 1 || n == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  ThreadGroup group;
  size_t threads = std::min<size_t>(static_cast<size_t>(workers), n);
  for (size_t t = 0; t < threads; ++t) {
    group.Spawn([&]() {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  group.Join();
}

}  // namespace erkit
