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

#ifndef ERKIT_INDEXING_H_
#define ERKIT_INDEXING_H_

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "erkit/common.h"
#include "erkit/dictionary.h"
#include "erkit/schema.h"
#include "erkit/table.h"

namespace erkit {

inline constexpr size_t kMaxBlockingFeatures = 16;

struct IndexingConfig {
  std::vector<std::string> features;
  size_t maxrow = 1000;
  Mode mode = Mode::kDedup;

  void Validate(const AttributeSchema &schema) const;
};

enum class Source : uint8_t { kLeft = 0, kRight = 1 };

// A record pair. Dedup: id_a < id_b. Link: id_a from the left table, id_b
// from the right table.
struct CandidatePair {
  int64_t id_a = 0;
  int64_t id_b = 0;

  friend auto operator<=>(const CandidatePair &, const CandidatePair &) = default;
};

// Blocking rows: one row per combination of a record's distinct list values.
// Codes are stored row-major with one column per feature.
struct ExpandedTable {
  std::vector<std::string> features;
  std::vector<uint32_t> row_record;   // record index of each expanded row
  std::vector<int32_t> codes;         // row-major, kNullCode for null
  std::vector<int64_t> record_ids;    // by record index
  std::vector<Source> record_source;  // by record index

  size_t num_rows() const { return row_record.size(); }
  size_t num_records() const { return record_ids.size(); }
  int32_t code(size_t row, size_t feature) const {
    return codes[row * features.size() + feature];
  }

  // Appends another expansion over the same features (link mode union).
  void Append(const ExpandedTable &other);
};

struct IndexingStats {
  uint64_t subsets_evaluated = 0;
  std::vector<uint64_t> groups_per_subset;
  uint64_t groups_skipped_over_maxrow = 0;
  uint64_t pairs_emitted = 0;
  // Largest number of pairs any single group produced.
  uint64_t max_pairs_per_group = 0;

  uint64_t total_groups() const;
  std::string ToJson() const;
};

struct IndexResult {
  std::vector<CandidatePair> pairs;  // sorted, unique
  IndexingStats stats;
};

// Encodes every feature attribute, sharing one dictionary per attribute across
// all bound columns and all tables, in first-occurrence order (tables in
// order, rows in order, columns in binding order).
std::map<std::string, Dictionary> EncodeAttributes(std::span<const Table> tables,
                                                   const AttributeSchema &schema,
                                                   const std::vector<std::string> &features);

ExpandedTable ExpandRows(const Table &table, const AttributeSchema &schema,
                         const std::vector<std::string> &features,
                         const std::map<std::string, Dictionary> &dictionaries,
                         Source source = Source::kLeft);

// All non-empty subsets of feature indices [0, n), by length and then in
// lexicographic index order.
std::vector<std::vector<size_t>> FeatureSubsets(size_t n);

IndexResult BlockAndPair(const ExpandedTable &expanded, const IndexingConfig &config,
                         int workers = 1);

struct IndexOutput {
  IndexResult result;
  std::map<std::string, Dictionary> dictionaries;
};

// encode -> expand -> block. Dedup takes one table, link takes two.
IndexOutput IndexDataset(std::span<const Table> tables, const AttributeSchema &schema,
                         const IndexingConfig &config, int workers = 1);

// Pair file: header "id_a,id_b" (link: "left_id,right_id").
void WritePairs(const std::vector<CandidatePair> &pairs, const std::string &path,
                Mode mode = Mode::kDedup);
std::vector<CandidatePair> ReadPairs(const std::string &path);

}  // namespace erkit

#endif  // ERKIT_INDEXING_H_
