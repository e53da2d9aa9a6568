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

#include "erkit/table.h"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "erkit/common.h"
#include "erkit/io.h"

namespace erkit {

const char *DataTypeName(DataType type) {
  switch (type) {
    case DataType::kText:
      return "text";
    case DataType::kNumeric:
      return "numeric";
    case DataType::kBoolean:
      return "boolean";
  }
  return "text";
}

DataType ParseDataType(const std::string &name) {
  if (name == "text") return DataType::kText;
  if (name == "numeric") return DataType::kNumeric;
  if (name == "boolean") return DataType::kBoolean;
  throw UsageError("unknown datatype '" + name + "'");
}

int Table::FindColumn(const std::string &column) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == column) return static_cast<int>(i);
  }
  return -1;
}

const Column &Table::GetColumn(const std::string &column) const {
  int idx = FindColumn(column);
  if (idx < 0) throw UsageError("unknown column '" + column + "' in table " + name);
  return columns[static_cast<size_t>(idx)];
}

void Table::Validate() const {
  std::unordered_set<int64_t> seen;
  seen.reserve(row_ids.size());
  for (int64_t id : row_ids) {
    if (id < 0) throw UsageError("negative row id " + std::to_string(id));
    if (!seen.insert(id).second) {
      throw UsageError("duplicate row id " + std::to_string(id));
    }
  }
  std::unordered_set<std::string> names;
  for (const auto &col : columns) {
    if (!names.insert(col.name).second) {
      throw UsageError("duplicate column name '" + col.name + "'");
    }
    if (col.cells.size() != row_ids.size()) {
      throw UsageError("column '" + col.name + "' has " +
                       std::to_string(col.cells.size()) + " cells, expected " +
                       std::to_string(row_ids.size()));
    }
    if (col.type == DataType::kText) continue;
    for (const auto &cell : col.cells) {
      if (cell && ConvertCell(*cell, col.type) != cell) {
        throw UsageError("cell '" + *cell + "' in column '" + col.name +
                         "' is not " + DataTypeName(col.type));
      }
    }
  }
}

Cell ConvertCell(const std::string &text, DataType type) {
  switch (type) {
    case DataType::kText: {
      bool blank = std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return std::isspace(c);
      });
      if (blank) return std::nullopt;
      return text;
    }
    case DataType::kNumeric: {
      auto v = ParseDouble(text);
      if (!v) return std::nullopt;
      if (*v == 0) return std::string("0");
      return FormatDouble(*v);
    }
    case DataType::kBoolean: {
      std::string t = Trim(text);
      std::transform(t.begin(), t.end(), t.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (t == "true" || t == "1" || t == "yes" || t == "t" || t == "y") {
        return std::string("true");
      }
      if (t == "false" || t == "0" || t == "no" || t == "f" || t == "n") {
        return std::string("false");
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

LoadResult LoadDataset(const std::string &path, const LoadOptions &options) {
  CsvReader reader(path, options.delimiter);
  std::vector<std::string> header;
  if (!reader.Next(header)) throw UsageError(path + ": missing header row");
  if (header.size() == 1 && Trim(header[0]).empty()) {
    throw UsageError(path + ": malformed header (no column names)");
  }

  int id_index = -1;
  std::unordered_set<std::string> names;
  for (size_t i = 0; i < header.size(); ++i) {
    header[i] = Trim(header[i]);
    if (header[i].empty()) {
      throw UsageError(path + ": malformed header (empty column name at position " +
                       std::to_string(i + 1) + ")");
    }
    if (!names.insert(header[i]).second) {
      throw UsageError(path + ": duplicate column name '" + header[i] + "'");
    }
    if (!options.id_column.empty() && header[i] == options.id_column) {
      id_index = static_cast<int>(i);
    }
  }
  if (!options.id_column.empty() && id_index < 0) {
    throw UsageError(path + ": id column '" + options.id_column + "' not found");
  }
  for (const auto &[col, type] : options.declared_types) {
    if (!names.count(col)) {
      throw UsageError(path + ": declared type for unknown column '" + col + "'");
    }
  }

  LoadResult result;
  Table &table = result.table;
  table.name = path;
  std::vector<int> slot(header.size(), -1);
  for (size_t i = 0; i < header.size(); ++i) {
    if (static_cast<int>(i) == id_index) continue;
    Column col;
    col.name = header[i];
    auto it = options.declared_types.find(header[i]);
    if (it != options.declared_types.end()) col.type = it->second;
    slot[i] = static_cast<int>(table.columns.size());
    table.columns.push_back(std::move(col));
  }

  auto warn = [&](std::string msg) {
    ++result.parse_warnings;
    if (result.warnings.size() < 20) result.warnings.push_back(std::move(msg));
  };

  std::vector<std::string> fields;
  while (reader.Next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != header.size()) {
      throw UsageError(path + ":" + std::to_string(reader.line()) + ": expected " +
                       std::to_string(header.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }
    if (id_index >= 0) {
      auto id = ParseInt(fields[static_cast<size_t>(id_index)]);
      if (!id || *id < 0) {
        throw UsageError(path + ":" + std::to_string(reader.line()) +
                         ": invalid record id '" +
                         fields[static_cast<size_t>(id_index)] + "'");
      }
      table.row_ids.push_back(*id);
    } else {
      table.row_ids.push_back(static_cast<int64_t>(table.row_ids.size()));
    }
    for (size_t i = 0; i < fields.size(); ++i) {
      if (slot[i] < 0) continue;
      Column &col = table.columns[static_cast<size_t>(slot[i])];
      Cell cell = ConvertCell(fields[i], col.type);
      if (!cell && !Trim(fields[i]).empty()) {
        warn(path + ":" + std::to_string(reader.line()) + ": '" + fields[i] +
             "' is not " + DataTypeName(col.type) + " (column " + col.name +
             "), stored as null");
      }
      col.cells.push_back(std::move(cell));
    }
  }
  if (table.row_ids.empty()) throw UsageError(path + ": no data rows");
  table.Validate();
  return result;
}

void WriteTable(const Table &table, const std::string &path, char delimiter,
                const std::string &id_column) {
  CsvWriter writer(path, delimiter);
  std::vector<std::string> fields;
  fields.push_back(id_column);
  for (const auto &col : table.columns) fields.push_back(col.name);
  writer.Write(fields);
  for (size_t r = 0; r < table.num_rows(); ++r) {
    fields.clear();
    fields.push_back(std::to_string(table.row_ids[r]));
    for (const auto &col : table.columns) {
      fields.push_back(col.cells[r].value_or(""));
    }
    writer.Write(fields);
  }
  writer.Close();
}

}  // namespace erkit
