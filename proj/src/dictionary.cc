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

#include "erkit/dictionary.h"

#include <limits>

#include "erkit/common.h"
#include "erkit/io.h"

namespace erkit {

int32_t Dictionary::Encode(const std::string &value) {
  auto it = codes_.find(value);
  if (it != codes_.end()) return it->second;
  if (values_.size() >= static_cast<size_t>(std::numeric_limits<int32_t>::max())) {
    throw Error("dictionary " + name_ + " overflow");
  }
  auto code = static_cast<int32_t>(values_.size());
  values_.push_back(value);
  codes_.emplace(value, code);
  return code;
}

std::optional<int32_t> Dictionary::Lookup(std::string_view value) const {
  auto it = codes_.find(std::string(value));
  if (it == codes_.end()) return std::nullopt;
  return it->second;
}

const std::string &Dictionary::Decode(int32_t code) const {
  if (code < 0 || static_cast<size_t>(code) >= values_.size()) {
    throw UsageError("dictionary " + name_ + ": code " + std::to_string(code) +
                     " out of range");
  }
  return values_[static_cast<size_t>(code)];
}

void Dictionary::Save(const std::string &path, char delimiter) const {
  CsvWriter out(path, delimiter);
  out.Write({"code", "value"});
  for (size_t i = 0; i < values_.size(); ++i) {
    out.Write({std::to_string(i), values_[i]});
  }
  out.Close();
}

Dictionary Dictionary::Load(const std::string &path, const std::string &name,
                            char delimiter) {
  CsvReader in(path, delimiter);
  std::vector<std::string> fields;
  if (!in.Next(fields) || fields.size() != 2) {
    throw UsageError(path + ": expected header code,value");
  }
  Dictionary dict(name);
  while (in.Next(fields)) {
    if (fields.size() != 2) throw UsageError(path + ": expected 2 fields");
    auto code = ParseInt(fields[0]);
    if (!code || *code != static_cast<int64_t>(dict.size())) {
      throw UsageError(path + ":" + std::to_string(in.line()) +
                       ": codes must be contiguous from 0");
    }
    if (dict.Lookup(fields[1])) {
      throw UsageError(path + ": duplicate value '" + fields[1] + "'");
    }
    dict.Encode(fields[1]);
  }
  return dict;
}

EncodedColumn EncodeDictionary(const Table &table, const std::string &column) {
  const Column &col = table.GetColumn(column);
  EncodedColumn out{{}, Dictionary(column)};
  out.codes.reserve(col.cells.size());
  for (const auto &cell : col.cells) {
    out.codes.push_back(cell ? out.dictionary.Encode(*cell) : kNullCode);
  }
  return out;
}

}  // namespace erkit
