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

#ifndef ERKIT_CLEANING_H_
#define ERKIT_CLEANING_H_

#include <string>
#include <vector>

#include "erkit/table.h"

namespace erkit {

// One regex rule. The column selector is either an exact column name or, when
// column_is_pattern is set, a regular expression that must match the whole
// column name.
struct CleaningRule {
  enum class Action { kReplace, kNullify };

  std::string column;
  bool column_is_pattern = false;
  std::string pattern;
  Action action = Action::kReplace;
  std::string replacement;
};

struct CleaningResult {
  Table table;
  // Cells changed by each rule, aligned with the input rule list.
  std::vector<size_t> applied_counts;
  // Cells that no longer parsed as their column type after cleaning.
  size_t type_warnings = 0;
};

// Applies the rules in order to every selected cell. `nullify` fires only when
// the pattern matches the entire cell; `replace` substitutes every occurrence.
// Cells that end up empty become null. Throws UsageError on a bad regex.
CleaningResult ApplyCleaningRules(const Table &table,
                                  const std::vector<CleaningRule> &rules,
                                  int workers = 1);

struct DropResult {
  Table table;
  std::vector<std::string> removed;
};

// Removes columns with at most one distinct non-null value (all-null columns
// included).
DropResult DropConstantColumns(const Table &table);

}  // namespace erkit

#endif  // ERKIT_CLEANING_H_
