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

#ifndef ERKIT_SCHEMA_H_
#define ERKIT_SCHEMA_H_

#include <string>
#include <vector>

#include "erkit/table.h"

namespace erkit {

enum class AttributeKind { kScalar, kList };

// A scalar attribute binds one column. A list attribute binds several columns
// holding interchangeable values (e.g. home and work phone).
struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::kScalar;
  std::vector<std::string> columns;
  DataType type = DataType::kText;
};

struct AttributeSchema {
  std::vector<Attribute> attributes;

  const Attribute *Find(const std::string &name) const;
  const Attribute &Get(const std::string &name) const;

  // Structural checks: binding arity per kind, no column bound twice.
  void Validate() const;
  // Structural checks plus every bound column present in the table with the
  // attribute's datatype.
  void ValidateAgainst(const Table &table) const;

  // Schema restricted to columns still present in the table. Attributes left
  // without columns are dropped and reported; a list attribute may shrink to
  // a single column.
  AttributeSchema RestrictTo(const Table &table,
                             std::vector<std::string> *dropped = nullptr) const;
};

const char *AttributeKindName(AttributeKind kind);
AttributeKind ParseAttributeKind(const std::string &name);

// Distinct non-null values of an attribute for one row, in column order.
std::vector<const std::string *> AttributeValues(const Table &table,
                                                 const std::vector<int> &column_index,
                                                 size_t row);

}  // namespace erkit

#endif  // ERKIT_SCHEMA_H_
