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

#include "erkit/profile.h"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "erkit/common.h"
#include "json.hpp"

namespace erkit {

namespace {

ColumnProfile ProfileColumn(const Column &col, size_t k) {
  ColumnProfile p;
  p.name = col.name;
  p.type = col.type;
  std::unordered_map<std::string_view, size_t> counts;
  for (const auto &cell : col.cells) {
    if (!cell) {
      ++p.null_count;
      continue;
    }
    ++counts[*cell];
  }
  p.unique_count = counts.size();
  p.constant = p.unique_count <= 1;

  std::vector<std::pair<std::string_view, size_t>> sorted(counts.begin(),
                                                          counts.end());
  size_t take = std::min(k, sorted.size());
  auto by_count = [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  std::partial_sort(sorted.begin(), sorted.begin() + static_cast<long>(take),
                    sorted.end(), by_count);
  for (size_t i = 0; i < take; ++i) {
    p.top_k.emplace_back(std::string(sorted[i].first), sorted[i].second);
  }

  std::map<size_t, size_t> hist;
  for (const auto &[value, count] : counts) ++hist[count];
  p.count_histogram.assign(hist.begin(), hist.end());
  return p;
}

}  // namespace

ProfileReport Profile(const Table &table, int k, int workers) {
  if (k < 1) throw UsageError("profile: k must be >= 1");
  if (table.num_rows() == 0) throw UsageError("profile: table is empty");
  ProfileReport report;
  report.row_count = table.num_rows();
  report.columns.resize(table.num_columns());
  ParallelEach(table.num_columns(), workers, [&](size_t i) {
    report.columns[i] = ProfileColumn(table.columns[i], static_cast<size_t>(k));
  });
  return report;
}

std::string ProfileReport::ToJsonLines() const {
  std::string out;
  for (const auto &c : columns) {
    nlohmann::ordered_json j;
    j["column"] = c.name;
    j["datatype"] = DataTypeName(c.type);
    j["rows"] = row_count;
    j["null_count"] = c.null_count;
    j["unique_count"] = c.unique_count;
    j["constant"] = c.constant;
    auto top = nlohmann::ordered_json::array();
    for (const auto &[value, count] : c.top_k) top.push_back({value, count});
    j["top_k"] = std::move(top);
    auto hist = nlohmann::ordered_json::array();
    for (const auto &[occurrences, values] : c.count_histogram) {
      hist.push_back({occurrences, values});
    }
    j["count_histogram"] = std::move(hist);
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out.push_back('\n');
  }
  return out;
}

}  // namespace erkit
