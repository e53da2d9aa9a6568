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

#ifndef ERKIT_PROFILE_H_
#define ERKIT_PROFILE_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "erkit/table.h"

namespace erkit {

struct ColumnProfile {
  std::string name;
  DataType type = DataType::kText;
  size_t null_count = 0;
  size_t unique_count = 0;
  // Most frequent values, count descending then value ascending.
  std::vector<std::pair<std::string, size_t>> top_k;
  // (occurrence count, number of distinct values occurring that often),
  // ascending by occurrence count.
  std::vector<std::pair<size_t, size_t>> count_histogram;
  bool constant = false;
};

struct ProfileReport {
  size_t row_count = 0;
  std::vector<ColumnProfile> columns;

  // One JSON object per line, one line per column.
  std::string ToJsonLines() const;
};

ProfileReport Profile(const Table &table, int k = 20, int workers = 1);

}  // namespace erkit

#endif  // ERKIT_PROFILE_H_
