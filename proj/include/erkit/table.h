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

#ifndef ERKIT_TABLE_H_
#define ERKIT_TABLE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace erkit {

enum class DataType { kText, kNumeric, kBoolean };

const char *DataTypeName(DataType type);
DataType ParseDataType(const std::string &name);

// A nullable cell. Numeric and boolean cells hold their canonical text form.
using Cell = std::optional<std::string>;

struct Column {
  std::string name;
  DataType type = DataType::kText;
  std::vector<Cell> cells;
};

// An immutable-by-convention columnar table. Transforms return new tables.
struct Table {
  std::string name;
  std::vector<int64_t> row_ids;
  std::vector<Column> columns;

  size_t num_rows() const { return row_ids.size(); }
  size_t num_columns() const { return columns.size(); }

  // Index of the named column, or -1.
  int FindColumn(const std::string &column) const;
  const Column &GetColumn(const std::string &column) const;

  // Throws when row ids are duplicated or negative, columns are ragged, or a
  // cell does not conform to its column type.
  void Validate() const;
};

// Converts text to the canonical form for a type; nullopt when it does not
// parse. Empty or whitespace-only text is always null.
Cell ConvertCell(const std::string &text, DataType type);

struct LoadOptions {
  char delimiter = ',';
  // Column used as the record id. Sequential ids are synthesized when empty.
  std::string id_column;
  std::map<std::string, DataType> declared_types;
};

struct LoadResult {
  Table table;
  size_t parse_warnings = 0;
  std::vector<std::string> warnings;  // first few messages only
};

LoadResult LoadDataset(const std::string &path, const LoadOptions &options = {});

// Writes the table with the id column first (named "id" unless id_column
// is given). Nulls are written as empty fields.
void WriteTable(const Table &table, const std::string &path, char delimiter = ',',
                const std::string &id_column = "id");

}  // namespace erkit

#endif  // ERKIT_TABLE_H_
