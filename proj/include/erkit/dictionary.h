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

#ifndef ERKIT_DICTIONARY_H_
#define ERKIT_DICTIONARY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "erkit/table.h"

namespace erkit {

inline constexpr int32_t kNullCode = -1;

// Bijective value <-> dense code mapping. Codes are assigned in first-seen
// order starting at 0.
class Dictionary {
 public:
  Dictionary() = default;
  explicit Dictionary(std::string name) : name_(std::move(name)) {}

  const std::string &name() const { return name_; }
  size_t size() const { return values_.size(); }

  // Returns the code for value, assigning the next code if unseen.
  int32_t Encode(const std::string &value);
  std::optional<int32_t> Lookup(std::string_view value) const;
  const std::string &Decode(int32_t code) const;

  const std::vector<std::string> &values() const { return values_; }

  // Two-column delimited file: code,value.
  void Save(const std::string &path, char delimiter = ',') const;
  static Dictionary Load(const std::string &path, const std::string &name,
                         char delimiter = ',');

 private:
  std::string name_;
  std::vector<std::string> values_;
  std::unordered_map<std::string, int32_t> codes_;
};

struct EncodedColumn {
  std::vector<int32_t> codes;  // kNullCode for null cells
  Dictionary dictionary;
};

EncodedColumn EncodeDictionary(const Table &table, const std::string &column);

}  // namespace erkit

#endif  // ERKIT_DICTIONARY_H_
