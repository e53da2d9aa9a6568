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

#include "erkit/indexing.h"

#include <algorithm>
#include <bit>
#include <numeric>

#include "erkit/io.h"
#include "json.hpp"

namespace erkit {

void IndexingConfig::Validate(const AttributeSchema &schema) const {
  if (features.empty()) throw UsageError("indexing: at least one feature is required");
  if (features.size() > kMaxBlockingFeatures) {
    throw UsageError("indexing: at most " + std::to_string(kMaxBlockingFeatures) +
                     " features are supported, got " + std::to_string(features.size()));
  }
  if (maxrow < 2) throw UsageError("indexing: maxrow must be >= 2");
  for (size_t i = 0; i < features.size(); ++i) {
    if (schema.Find(features[i]) == nullptr) {
      throw UsageError("indexing: unknown feature '" + features[i] + "'");
    }
    for (size_t j = 0; j < i; ++j) {
      if (features[i] == features[j]) {
        throw UsageError("indexing: feature '" + features[i] + "' listed twice");
      }
    }
  }
}

void ExpandedTable::Append(const ExpandedTable &other) {
  if (other.features != features) {
    throw UsageError("cannot union expansions over different features");
  }
  auto offset = static_cast<uint32_t>(record_ids.size());
  for (uint32_t r : other.row_record) row_record.push_back(r + offset);
  codes.insert(codes.end(), other.codes.begin(), other.codes.end());
  record_ids.insert(record_ids.end(), other.record_ids.begin(), other.record_ids.end());
  record_source.insert(record_source.end(), other.record_source.begin(),
                       other.record_source.end());
}

uint64_t IndexingStats::total_groups() const {
  return std::accumulate(groups_per_subset.begin(), groups_per_subset.end(),
                         uint64_t{0});
}

std::string IndexingStats::ToJson() const {
  nlohmann::ordered_json j;
  j["subsets_evaluated"] = subsets_evaluated;
  j["groups_per_subset"] = groups_per_subset;
  j["total_groups"] = total_groups();
  j["groups_skipped_over_maxrow"] = groups_skipped_over_maxrow;
  j["pairs_emitted"] = pairs_emitted;
  j["max_pairs_per_group"] = max_pairs_per_group;
  return j.dump(2) + "\n";
}

namespace {

std::vector<int> ColumnIndexes(const Table &table, const Attribute &attr) {
  std::vector<int> out;
  for (const auto &c : attr.columns) {
    int idx = table.FindColumn(c);
    if (idx < 0) {
      throw UsageError("attribute '" + attr.name + "' binds missing column '" + c + "'");
    }
    out.push_back(idx);
  }
  return out;
}

}  // namespace

std::map<std::string, Dictionary> EncodeAttributes(std::span<const Table> tables,
                                                   const AttributeSchema &schema,
                                                   const std::vector<std::string> &features) {
  std::map<std::string, Dictionary> dicts;
  for (const auto &f : features) {
    const Attribute &attr = schema.Get(f);
    Dictionary dict(attr.name);
    for (const Table &table : tables) {
      auto cols = ColumnIndexes(table, attr);
      for (size_t r = 0; r < table.num_rows(); ++r) {
        for (int ci : cols) {
          const Cell &cell = table.columns[static_cast<size_t>(ci)].cells[r];
          if (cell) dict.Encode(*cell);
        }
      }
    }
    dicts.emplace(f, std::move(dict));
  }
  return dicts;
}

ExpandedTable ExpandRows(const Table &table, const AttributeSchema &schema,
                         const std::vector<std::string> &features,
                         const std::map<std::string, Dictionary> &dictionaries,
                         Source source) {
  ExpandedTable out;
  out.features = features;
  const size_t nf = features.size();
  std::vector<std::vector<int>> cols;
  std::vector<const Dictionary *> dicts;
  for (const auto &f : features) {
    const Attribute *attr = schema.Find(f);
    if (attr == nullptr) throw UsageError("expand: unknown feature '" + f + "'");
    auto it = dictionaries.find(f);
    if (it == dictionaries.end()) {
      throw UsageError("expand: missing dictionary for feature '" + f + "'");
    }
    cols.push_back(ColumnIndexes(table, *attr));
    dicts.push_back(&it->second);
  }

  out.record_ids = table.row_ids;
  out.record_source.assign(table.num_rows(), source);
  out.row_record.reserve(table.num_rows());
  out.codes.reserve(table.num_rows() * nf);

  std::vector<std::vector<int32_t>> values(nf);
  std::vector<size_t> odometer(nf);
  for (size_t r = 0; r < table.num_rows(); ++r) {
    for (size_t f = 0; f < nf; ++f) {
      values[f].clear();
      for (int ci : cols[f]) {
        const Cell &cell = table.columns[static_cast<size_t>(ci)].cells[r];
        if (!cell) continue;
        auto code = dicts[f]->Lookup(*cell);
        if (!code) {
          throw UsageError("expand: value '" + *cell + "' of feature '" + features[f] +
                           "' missing from its dictionary");
        }
        if (std::find(values[f].begin(), values[f].end(), *code) == values[f].end()) {
          values[f].push_back(*code);
        }
      }
      if (values[f].empty()) values[f].push_back(kNullCode);
    }
    // Cartesian product, last feature varying fastest.
    std::fill(odometer.begin(), odometer.end(), 0);
    for (;;) {
      out.row_record.push_back(static_cast<uint32_t>(r));
      for (size_t f = 0; f < nf; ++f) out.codes.push_back(values[f][odometer[f]]);
      bool done = true;
      for (size_t f = nf; f > 0; --f) {
        if (++odometer[f - 1] < values[f - 1].size()) {
          done = false;
          break;
        }
        odometer[f - 1] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

std::vector<std::vector<size_t>> FeatureSubsets(size_t n) {
  if (n == 0) throw UsageError("feature subsets: at least one feature is required");
  if (n > kMaxBlockingFeatures) {
    throw UsageError("feature subsets: at most " + std::to_string(kMaxBlockingFeatures) +
                     " features are supported");
  }
  std::vector<std::vector<size_t>> out;
  for (size_t len = 1; len <= n; ++len) {
    std::vector<size_t> idx(len);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      out.push_back(idx);
      // Advance to the next combination in lexicographic order.
      size_t i = len;
      while (i > 0 && idx[i - 1] == n - len + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < len; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

namespace {

using Key128 = unsigned __int128;

struct SubsetOutput {
  std::vector<uint64_t> pairs;  // packed (record_a << 32 | record_b)
  uint64_t groups = 0;
  uint64_t skipped = 0;
  uint64_t max_group_pairs = 0;
};

// Emits pairs for one group given its sorted distinct record indices.
void EmitGroup(const std::vector<uint32_t> &records, const ExpandedTable &expanded,
               Mode mode, size_t maxrow, SubsetOutput &out) {
  ++out.groups;
  if (records.size() > maxrow) {
    ++out.skipped;
    return;
  }
  if (records.size() < 2) return;
  uint64_t before = out.pairs.size();
  if (mode == Mode::kDedup) {
    for (size_t i = 0; i < records.size(); ++i) {
      for (size_t j = i + 1; j < records.size(); ++j) {
        out.pairs.push_back(uint64_t{records[i]} << 32 | records[j]);
      }
    }
  } else {
    // Left records precede right records in record-index order.
    size_t split = 0;
    while (split < records.size() &&
           expanded.record_source[records[split]] == Source::kLeft) {
      ++split;
    }
    for (size_t i = 0; i < split; ++i) {
      for (size_t j = split; j < records.size(); ++j) {
        out.pairs.push_back(uint64_t{records[i]} << 32 | records[j]);
      }
    }
  }
  out.max_group_pairs = std::max<uint64_t>(out.max_group_pairs, out.pairs.size() - before);
}

template <typename Entries>
void ScanGroups(const Entries &entries, const ExpandedTable &expanded, Mode mode,
                size_t maxrow, SubsetOutput &out) {
  std::vector<uint32_t> records;
  size_t i = 0;
  while (i < entries.size()) {
    size_t j = i;
    records.clear();
    while (j < entries.size() && entries[j].first == entries[i].first) {
      if (records.empty() || records.back() != entries[j].second) {
        records.push_back(entries[j].second);
      }
      ++j;
    }
    EmitGroup(records, expanded, mode, maxrow, out);
    i = j;
  }
}

SubsetOutput ProcessSubset(const ExpandedTable &expanded, const std::vector<size_t> &subset,
                           const std::vector<int> &bit_widths, Mode mode, size_t maxrow) {
  SubsetOutput out;
  const size_t nf = expanded.features.size();
  const size_t rows = expanded.num_rows();
  int total_bits = 0;
  for (size_t f : subset) total_bits += bit_widths[f];

  auto row_complete = [&](size_t row) {
    for (size_t f : subset) {
      if (expanded.codes[row * nf + f] == kNullCode) return false;
    }
    return true;
  };

  if (total_bits <= 128) {
    std::vector<std::pair<Key128, uint32_t>> entries;
    entries.reserve(rows);
    for (size_t row = 0; row < rows; ++row) {
      if (!row_complete(row)) continue;
      Key128 key = 0;
      for (size_t f : subset) {
        key = (key << bit_widths[f]) |
              static_cast<uint32_t>(expanded.codes[row * nf + f]);
      }
      entries.emplace_back(key, expanded.row_record[row]);
    }
    std::sort(entries.begin(), entries.end());
    ScanGroups(entries, expanded, mode, maxrow, out);
  } else {
    // Wide subsets: compare code tuples directly.
    std::vector<uint32_t> order;
    for (size_t row = 0; row < rows; ++row) {
      if (row_complete(row)) order.push_back(static_cast<uint32_t>(row));
    }
    auto tuple_less = [&](uint32_t a, uint32_t b) {
      for (size_t f : subset) {
        int32_t ca = expanded.codes[a * nf + f];
        int32_t cb = expanded.codes[b * nf + f];
        if (ca != cb) return ca < cb;
      }
      return expanded.row_record[a] < expanded.row_record[b];
    };
    std::sort(order.begin(), order.end(), tuple_less);
    // Rank rows by tuple so ScanGroups can compare integer keys.
    std::vector<std::pair<uint64_t, uint32_t>> entries;
    entries.reserve(order.size());
    uint64_t rank = 0;
    for (size_t i = 0; i < order.size(); ++i) {
      if (i > 0) {
        bool same = true;
        for (size_t f : subset) {
          if (expanded.codes[order[i] * nf + f] != expanded.codes[order[i - 1] * nf + f]) {
            same = false;
            break;
          }
        }
        if (!same) ++rank;
      }
      entries.emplace_back(rank, expanded.row_record[order[i]]);
    }
    ScanGroups(entries, expanded, mode, maxrow, out);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()), out.pairs.end());
  return out;
}

}  // namespace

IndexResult BlockAndPair(const ExpandedTable &expanded, const IndexingConfig &config,
                         int workers) {
  if (config.maxrow < 2) throw UsageError("indexing: maxrow must be >= 2");
  const size_t nf = expanded.features.size();
  auto subsets = FeatureSubsets(nf);

  std::vector<int> bit_widths(nf, 1);
  for (size_t f = 0; f < nf; ++f) {
    uint32_t max_code = 0;
    for (size_t row = 0; row < expanded.num_rows(); ++row) {
      int32_t c = expanded.codes[row * nf + f];
      if (c > 0) max_code = std::max(max_code, static_cast<uint32_t>(c));
    }
    bit_widths[f] = std::max(1, static_cast<int>(std::bit_width(max_code)));
  }

  std::vector<SubsetOutput> outputs(subsets.size());
  ParallelEach(subsets.size(), workers, [&](size_t s) {
    outputs[s] = ProcessSubset(expanded, subsets[s], bit_widths, config.mode, config.maxrow);
  });

  IndexResult result;
  result.stats.subsets_evaluated = subsets.size();
  size_t total = 0;
  for (const auto &o : outputs) {
    result.stats.groups_per_subset.push_back(o.groups);
    result.stats.groups_skipped_over_maxrow += o.skipped;
    result.stats.max_pairs_per_group = std::max(result.stats.max_pairs_per_group,
                                                o.max_group_pairs);
    total += o.pairs.size();
  }
  std::vector<uint64_t> packed;
  packed.reserve(total);
  for (auto &o : outputs) {
    packed.insert(packed.end(), o.pairs.begin(), o.pairs.end());
    std::vector<uint64_t>().swap(o.pairs);
  }
  std::sort(packed.begin(), packed.end());
  packed.erase(std::unique(packed.begin(), packed.end()), packed.end());

  result.pairs.reserve(packed.size());
  for (uint64_t p : packed) {
    int64_t a = expanded.record_ids[p >> 32];
    int64_t b = expanded.record_ids[p & 0xffffffffULL];
    if (config.mode == Mode::kDedup && a > b) std::swap(a, b);
    result.pairs.push_back({a, b});
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  result.pairs.erase(std::unique(result.pairs.begin(), result.pairs.end()),
                     result.pairs.end());
  result.stats.pairs_emitted = result.pairs.size();
  return result;
}

IndexOutput IndexDataset(std::span<const Table> tables, const AttributeSchema &schema,
                         const IndexingConfig &config, int workers) {
  size_t expected = config.mode == Mode::kDedup ? 1 : 2;
  if (tables.size() != expected) {
    throw UsageError(std::string("indexing: ") + ModeName(config.mode) + " mode takes " +
                     std::to_string(expected) + " table(s), got " +
                     std::to_string(tables.size()));
  }
  config.Validate(schema);
  schema.Validate();
  if (config.mode == Mode::kLink) {
    for (const auto &f : config.features) {
      const Attribute &attr = schema.Get(f);
      for (const auto &c : attr.columns) {
        int li = tables[0].FindColumn(c);
        int ri = tables[1].FindColumn(c);
        if (li < 0 || ri < 0) {
          throw UsageError("indexing: column '" + c + "' missing from a link input");
        }
        DataType lt = tables[0].columns[static_cast<size_t>(li)].type;
        DataType rt = tables[1].columns[static_cast<size_t>(ri)].type;
        if (lt != rt) {
          throw UsageError("indexing: feature '" + f + "' column '" + c +
                           "' is " + DataTypeName(lt) + " on the left but " +
                           DataTypeName(rt) + " on the right");
        }
      }
    }
  }
  for (const auto &t : tables) schema.ValidateAgainst(t);

  IndexOutput out;
  out.dictionaries = EncodeAttributes(tables, schema, config.features);
  ExpandedTable expanded =
      ExpandRows(tables[0], schema, config.features, out.dictionaries, Source::kLeft);
  if (config.mode == Mode::kLink) {
    expanded.Append(ExpandRows(tables[1], schema, config.features, out.dictionaries,
                               Source::kRight));
  }
  out.result = BlockAndPair(expanded, config, workers);
  return out;
}

void WritePairs(const std::vector<CandidatePair> &pairs, const std::string &path,
                Mode mode) {
  CsvWriter out(path);
  out.WriteRaw(mode == Mode::kDedup ? "id_a,id_b" : "left_id,right_id");
  std::string line;
  for (const auto &p : pairs) {
    line = std::to_string(p.id_a);
    line.push_back(',');
    line += std::to_string(p.id_b);
    out.WriteRaw(line);
  }
  out.Close();
}

std::vector<CandidatePair> ReadPairs(const std::string &path) {
  CsvReader in(path);
  std::vector<std::string> fields;
  if (!in.Next(fields) || fields.size() < 2) {
    throw UsageError(path + ": expected a two-column pair header");
  }
  std::vector<CandidatePair> pairs;
  while (in.Next(fields)) {
    if (fields.size() < 2) throw UsageError(path + ": short pair row");
    auto a = ParseInt(fields[0]);
    auto b = ParseInt(fields[1]);
    if (!a || !b) {
      throw UsageError(path + ":" + std::to_string(in.line()) + ": invalid record id");
    }
    pairs.push_back({*a, *b});
  }
  return pairs;
}

}  // namespace erkit
