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

#include "erkit/schema.h"

#include <algorithm>
#include <unordered_set>

#include "erkit/common.h"

namespace erkit {

const char *AttributeKindName(AttributeKind kind) {
  return kind == AttributeKind::kScalar ? "scalar" : "list";
}

AttributeKind ParseAttributeKind(const std::string &name) {
  if (name == "scalar") return AttributeKind::kScalar;
  if (name == "list") return AttributeKind::kList;
  throw UsageError("unknown attribute kind '" + name + "' (expected scalar or list)");
}

const Attribute *AttributeSchema::Find(const std::string &name) const {
  for (const auto &a : attributes) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

const Attribute &AttributeSchema::Get(const std::string &name) const {
  const Attribute *a = Find(name);
  if (a == nullptr) throw UsageError("unknown attribute '" + name + "'");
  return *a;
}

void AttributeSchema::Validate() const {
  std::unordered_set<std::string> names;
  std::unordered_set<std::string> bound;
  for (const auto &a : attributes) {
    if (a.name.empty()) throw UsageError("attribute with empty name");
    if (!names.insert(a.name).second) {
      throw UsageError("attribute '" + a.name + "' declared twice");
    }
    if (a.kind == AttributeKind::kScalar && a.columns.size() != 1) {
      throw UsageError("scalar attribute '" + a.name + "' must bind exactly 1 column");
    }
    if (a.kind == AttributeKind::kList && a.columns.size() < 2) {
      throw UsageError("list attribute '" + a.name + "' must bind at least 2 columns");
    }
    for (const auto &c : a.columns) {
      if (!bound.insert(c).second) {
        throw UsageError("column '" + c + "' bound to more than one attribute");
      }
    }
  }
}

void AttributeSchema::ValidateAgainst(const Table &table) const {
  Validate();
  for (const auto &a : attributes) {
    for (const auto &c : a.columns) {
      int idx = table.FindColumn(c);
      if (idx < 0) {
        throw UsageError("attribute '" + a.name + "' binds missing column '" + c + "'");
      }
      if (table.columns[static_cast<size_t>(idx)].type != a.type) {
        throw UsageError("column '" + c + "' of attribute '" + a.name + "' is " +
                         DataTypeName(table.columns[static_cast<size_t>(idx)].type) +
                         ", attribute declares " + DataTypeName(a.type));
      }
    }
  }
}

AttributeSchema AttributeSchema::RestrictTo(const Table &table,
                                            std::vector<std::string> *dropped) const {
  AttributeSchema out;
  for (const auto &a : attributes) {
    Attribute kept = a;
    kept.columns.clear();
    for (const auto &c : a.columns) {
      if (table.FindColumn(c) >= 0) kept.columns.push_back(c);
    }
    if (kept.columns.empty()) {
      if (dropped) dropped->push_back(a.name);
      continue;
    }
    // A list attribute left with one column behaves as a scalar.
    if (kept.columns.size() == 1) kept.kind = AttributeKind::kScalar;
    out.attributes.push_back(std::move(kept));
  }
  return out;
}

std::vector<const std::string *> AttributeValues(const Table &table,
                                                 const std::vector<int> &column_index,
                                                 size_t row) {
  std::vector<const std::string *> out;
  for (int ci : column_index) {
    const Cell &cell = table.columns[static_cast<size_t>(ci)].cells[row];
    if (!cell) continue;
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const std::string *s) { return *s == *cell; });
    if (!dup) out.push_back(&*cell);
  }
  return out;
}

}  // namespace erkit
