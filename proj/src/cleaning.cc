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

#include "erkit/cleaning.h"

#include <regex>
#include <unordered_map>
#include <unordered_set>

#include "erkit/common.h"

namespace erkit {

namespace {

std::regex Compile(const std::string &pattern, const std::string &what) {
  try {
    return std::regex(pattern, std::regex::ECMAScript);
  } catch (const std::regex_error &e) {
    throw UsageError("invalid regular expression in " + what + ": '" + pattern +
                     "': " + e.what());
  }
}

struct CompiledRule {
  const CleaningRule *rule;
  std::regex column_regex;
  std::regex regex;
};

struct CellOutcome {
  Cell cell;
  std::vector<uint32_t> fired;  // indices into the rule list
  bool type_failure = false;
};

}  // namespace

CleaningResult ApplyCleaningRules(const Table &table,
                                  const std::vector<CleaningRule> &rules,
                                  int workers) {
  std::vector<CompiledRule> compiled;
  compiled.reserve(rules.size());
  for (size_t i = 0; i < rules.size(); ++i) {
    const auto &r = rules[i];
    std::string what = "cleaning rule " + std::to_string(i + 1);
    CompiledRule c{&r, {}, Compile(r.pattern, what)};
    if (r.column_is_pattern) c.column_regex = Compile(r.column, what + " column selector");
    compiled.push_back(std::move(c));
  }

  CleaningResult result;
  result.table = table;
  result.applied_counts.assign(rules.size(), 0);
  if (rules.empty()) return result;

  std::vector<std::vector<size_t>> counts(table.num_columns(),
                                          std::vector<size_t>(rules.size(), 0));
  std::vector<size_t> type_failures(table.num_columns(), 0);

  ParallelEach(table.num_columns(), workers, [&](size_t ci) {
    Column &col = result.table.columns[ci];
    std::vector<uint32_t> active;
    for (size_t ri = 0; ri < compiled.size(); ++ri) {
      const auto &c = compiled[ri];
      bool selected = c.rule->column_is_pattern
                          ? std::regex_match(col.name, c.column_regex)
                          : col.name == c.rule->column;
      if (selected) active.push_back(static_cast<uint32_t>(ri));
    }
    if (active.empty()) return;

    // Rules are pure functions of the cell text, so each distinct value is
    // cleaned once.
    std::unordered_map<std::string, CellOutcome> memo;
    for (auto &cell : col.cells) {
      if (!cell) continue;
      auto it = memo.find(*cell);
      if (it == memo.end()) {
        CellOutcome out;
        Cell cur = cell;
        for (uint32_t ri : active) {
          if (!cur) break;
          const auto &c = compiled[ri];
          if (c.rule->action == CleaningRule::Action::kNullify) {
            if (std::regex_match(*cur, c.regex)) {
              cur.reset();
              out.fired.push_back(ri);
            }
          } else {
            std::string next = std::regex_replace(*cur, c.regex, c.rule->replacement);
            if (next != *cur) {
              out.fired.push_back(ri);
              if (next.empty()) {
                cur.reset();
              } else {
                cur = std::move(next);
              }
            }
          }
        }
        if (cur) {
          Cell converted = ConvertCell(*cur, col.type);
          if (!converted) out.type_failure = true;
          cur = std::move(converted);
        }
        out.cell = std::move(cur);
        it = memo.emplace(*cell, std::move(out)).first;
      }
      for (uint32_t ri : it->second.fired) ++counts[ci][ri];
      if (it->second.type_failure) ++type_failures[ci];
      cell = it->second.cell;
    }
  });

  for (size_t ci = 0; ci < counts.size(); ++ci) {
    for (size_t ri = 0; ri < rules.size(); ++ri) {
      result.applied_counts[ri] += counts[ci][ri];
    }
    result.type_warnings += type_failures[ci];
  }
  return result;
}

DropResult DropConstantColumns(const Table &table) {
  DropResult result;
  result.table.name = table.name;
  result.table.row_ids = table.row_ids;
  for (const auto &col : table.columns) {
    std::unordered_set<std::string_view> distinct;
    for (const auto &cell : col.cells) {
      if (!cell) continue;
      distinct.insert(*cell);
      if (distinct.size() > 1) break;
    }
    if (distinct.size() <= 1) {
      result.removed.push_back(col.name);
    } else {
      result.table.columns.push_back(col);
    }
  }
  return result;
}

}  // namespace erkit
