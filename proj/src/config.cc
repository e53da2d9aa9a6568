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

#include "erkit/config.h"

#include <filesystem>
#include <set>

#include "erkit/io.h"
#include "erkit/synthetic.h"
#include "json.hpp"

namespace erkit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void CheckKeys(const json &j, const std::string &where, const std::set<std::string> &allowed) {
  if (!j.is_object()) throw UsageError("config: " + where + " must be an object");
  for (const auto &[key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw UsageError("config: unknown key '" + key + "' in " + where);
    }
  }
}

std::string Resolve(const std::string &path, const std::string &base) {
  if (path.empty() || base.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).lexically_normal().string();
}

template <typename T>
T Get(const json &j, const std::string &key, const std::string &where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &) {
    throw UsageError("config: " + where + "." + key + " has the wrong type");
  }
}

CleaningRule ParseRule(const json &j, size_t index) {
  std::string where = "cleaning[" + std::to_string(index) + "]";
  CheckKeys(j, where, {"column", "column_pattern", "match", "action", "replacement"});
  CleaningRule r;
  bool has_column = j.contains("column");
  bool has_pattern = j.contains("column_pattern");
  if (has_column == has_pattern) {
    throw UsageError("config: " + where + " needs exactly one of column, column_pattern");
  }
  r.column = has_column ? Get<std::string>(j, "column", where)
                        : Get<std::string>(j, "column_pattern", where);
  r.column_is_pattern = has_pattern;
  if (!j.contains("match")) throw UsageError("config: " + where + ".match is required");
  r.pattern = Get<std::string>(j, "match", where);
  std::string action = j.contains("action") ? Get<std::string>(j, "action", where) : "replace";
  if (action == "replace") {
    r.action = CleaningRule::Action::kReplace;
    r.replacement = j.contains("replacement") ? Get<std::string>(j, "replacement", where) : "";
  } else if (action == "nullify") {
    r.action = CleaningRule::Action::kNullify;
    if (j.contains("replacement")) {
      throw UsageError("config: " + where + ": nullify takes no replacement");
    }
  } else {
    throw UsageError("config: " + where + ".action must be replace or nullify");
  }
  return r;
}

}  // namespace

void PipelineConfig::Validate() const {
  size_t want = mode == Mode::kLink ? 2 : 1;
  if (inputs.size() != want) {
    throw UsageError(std::string("config: ") + ModeName(mode) + " mode requires exactly " +
                     std::to_string(want) + " input(s), got " +
                     std::to_string(inputs.size()));
  }
  schema.Validate();
  indexing.Validate(schema);
  FeatureSpec::Derive(schema, features);
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw UsageError("config: threshold must be within [0, 1]");
  }
  if (!labels.empty() && !truth.empty()) {
    throw UsageError("config: give labels or truth, not both");
  }
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) {
    throw UsageError("config: train_ratio must be in (0, 1)");
  }
  if (profile_top_k < 1) throw UsageError("config: profile.top_k must be >= 1");
  if (workers < 0) throw UsageError("config: workers must be >= 0");
  if (chunk_size < 1) throw UsageError("config: chunk_size must be >= 1");
  if (output_dir.empty()) throw UsageError("config: output_dir must not be empty");
  if (matcher.n_trees < 1 || matcher.max_depth < 1 || matcher.min_leaf < 1 ||
      matcher.max_features < 0 || matcher.max_bins < 2 || matcher.max_bins > 254) {
    throw UsageError("config: invalid matcher hyperparameters");
  }
  if (clustering.component_limit < 2) {
    throw UsageError("config: clustering.component_limit must be >= 2");
  }
}

PipelineConfig PipelineConfig::FromJson(const std::string &text, const std::string &base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw UsageError(std::string("config: invalid JSON: ") + e.what());
  }
  CheckKeys(j, "config",
            {"mode", "inputs", "delimiter", "id_column", "column_types", "schema", "cleaning",
             "profile", "indexing", "features", "matcher", "threshold", "labels", "truth",
             "train_ratio", "model", "clustering", "output_dir", "workers", "chunk_size"});
  PipelineConfig c;
  const std::string top = "config";
  if (j.contains("mode")) c.mode = ParseMode(Get<std::string>(j, "mode", top));
  if (!j.contains("inputs")) throw UsageError("config: inputs is required");
  for (const auto &p : Get<std::vector<std::string>>(j, "inputs", top)) {
    c.inputs.push_back(Resolve(p, base_dir));
  }
  if (j.contains("delimiter")) {
    auto d = Get<std::string>(j, "delimiter", top);
    if (d.size() != 1) throw UsageError("config: delimiter must be one character");
    c.delimiter = d[0];
  }
  if (j.contains("id_column")) c.id_column = Get<std::string>(j, "id_column", top);
  if (j.contains("column_types")) {
    for (const auto &[col, type] :
         Get<std::map<std::string, std::string>>(j, "column_types", top)) {
      c.column_types[col] = ParseDataType(type);
    }
  }
  if (!j.contains("schema")) throw UsageError("config: schema is required");
  if (!j.at("schema").is_array()) throw UsageError("config: schema must be an array");
  for (size_t i = 0; i < j.at("schema").size(); ++i) {
    const json &a = j.at("schema")[i];
    std::string where = "schema[" + std::to_string(i) + "]";
    CheckKeys(a, where, {"name", "kind", "columns", "type"});
    Attribute attr;
    attr.name = Get<std::string>(a, "name", where);
    attr.kind = a.contains("kind") ? ParseAttributeKind(Get<std::string>(a, "kind", where))
                                   : AttributeKind::kScalar;
    attr.columns = a.contains("columns") ? Get<std::vector<std::string>>(a, "columns", where)
                                         : std::vector<std::string>{attr.name};
    attr.type = a.contains("type") ? ParseDataType(Get<std::string>(a, "type", where))
                                   : DataType::kText;
    c.schema.attributes.push_back(std::move(attr));
  }
  if (j.contains("cleaning")) {
    if (!j.at("cleaning").is_array()) throw UsageError("config: cleaning must be an array");
    for (size_t i = 0; i < j.at("cleaning").size(); ++i) {
      c.cleaning.push_back(ParseRule(j.at("cleaning")[i], i));
    }
  }
  if (j.contains("profile")) {
    CheckKeys(j.at("profile"), "profile", {"top_k"});
    if (j.at("profile").contains("top_k")) {
      c.profile_top_k = Get<int>(j.at("profile"), "top_k", "profile");
    }
  }
  if (!j.contains("indexing")) throw UsageError("config: indexing is required");
  {
    const json &ix = j.at("indexing");
    CheckKeys(ix, "indexing", {"features", "maxrow"});
    c.indexing.features = Get<std::vector<std::string>>(ix, "features", "indexing");
    if (ix.contains("maxrow")) {
      int64_t m = Get<int64_t>(ix, "maxrow", "indexing");
      if (m < 2) throw UsageError("config: indexing.maxrow must be >= 2");
      c.indexing.maxrow = static_cast<size_t>(m);
    }
    c.indexing.mode = c.mode;
  }
  if (j.contains("features")) {
    const json &f = j.at("features");
    CheckKeys(f, "features", {"tokenizers", "measures"});
    if (f.contains("tokenizers")) {
      c.features.tokenizers.clear();
      for (const auto &t : Get<std::vector<std::string>>(f, "tokenizers", "features")) {
        c.features.tokenizers.push_back(Tokenizer::Parse(t));
      }
    }
    if (f.contains("measures")) {
      c.features.measures =
          Get<std::map<std::string, std::vector<std::string>>>(f, "measures", "features");
    }
  }
  if (j.contains("matcher")) {
    const json &m = j.at("matcher");
    CheckKeys(m, "matcher",
              {"n_trees", "max_depth", "min_leaf", "max_features", "max_bins", "seed"});
    auto opt = [&](const char *key, int &field) {
      if (m.contains(key)) field = Get<int>(m, key, "matcher");
    };
    opt("n_trees", c.matcher.n_trees);
    opt("max_depth", c.matcher.max_depth);
    opt("min_leaf", c.matcher.min_leaf);
    opt("max_features", c.matcher.max_features);
    opt("max_bins", c.matcher.max_bins);
    if (m.contains("seed")) c.matcher.seed = Get<uint64_t>(m, "seed", "matcher");
  }
  if (j.contains("threshold")) c.threshold = Get<double>(j, "threshold", top);
  if (j.contains("labels")) c.labels = Resolve(Get<std::string>(j, "labels", top), base_dir);
  if (j.contains("truth")) c.truth = Resolve(Get<std::string>(j, "truth", top), base_dir);
  if (j.contains("train_ratio")) c.train_ratio = Get<double>(j, "train_ratio", top);
  if (j.contains("model")) c.model = Resolve(Get<std::string>(j, "model", top), base_dir);
  if (j.contains("clustering")) {
    CheckKeys(j.at("clustering"), "clustering", {"component_limit"});
    if (j.at("clustering").contains("component_limit")) {
      int64_t lim = Get<int64_t>(j.at("clustering"), "component_limit", "clustering");
      if (lim < 2) throw UsageError("config: clustering.component_limit must be >= 2");
      c.clustering.component_limit = static_cast<size_t>(lim);
    }
  }
  if (j.contains("output_dir")) {
    c.output_dir = Resolve(Get<std::string>(j, "output_dir", top), base_dir);
  } else {
    c.output_dir = Resolve(c.output_dir, base_dir);
  }
  if (j.contains("workers")) c.workers = Get<int>(j, "workers", top);
  if (j.contains("chunk_size")) {
    int64_t cs = Get<int64_t>(j, "chunk_size", top);
    if (cs < 1) throw UsageError("config: chunk_size must be >= 1");
    c.chunk_size = static_cast<size_t>(cs);
  }
  c.Validate();
  return c;
}

PipelineConfig PipelineConfig::Load(const std::string &path) {
  if (!fs::exists(path)) throw UsageError("config file not found: " + path);
  fs::path base = fs::absolute(path).parent_path();
  return FromJson(ReadFile(path), base.string());
}

std::string PipelineConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["mode"] = ModeName(mode);
  j["inputs"] = inputs;
  j["delimiter"] = std::string(1, delimiter);
  if (!id_column.empty()) j["id_column"] = id_column;
  if (!column_types.empty()) {
    nlohmann::ordered_json types;
    for (const auto &[col, type] : column_types) types[col] = DataTypeName(type);
    j["column_types"] = types;
  }
  auto schema_j = nlohmann::ordered_json::array();
  for (const auto &a : schema.attributes) {
    schema_j.push_back({{"name", a.name},
                        {"kind", AttributeKindName(a.kind)},
                        {"columns", a.columns},
                        {"type", DataTypeName(a.type)}});
  }
  j["schema"] = schema_j;
  auto rules = nlohmann::ordered_json::array();
  for (const auto &r : cleaning) {
    nlohmann::ordered_json rj;
    rj[r.column_is_pattern ? "column_pattern" : "column"] = r.column;
    rj["match"] = r.pattern;
    if (r.action == CleaningRule::Action::kNullify) {
      rj["action"] = "nullify";
    } else {
      rj["action"] = "replace";
      rj["replacement"] = r.replacement;
    }
    rules.push_back(rj);
  }
  j["cleaning"] = rules;
  j["profile"] = {{"top_k", profile_top_k}};
  j["indexing"] = {{"features", indexing.features}, {"maxrow", indexing.maxrow}};
  std::vector<std::string> toks;
  for (const auto &t : features.tokenizers) toks.push_back(t.Name());
  nlohmann::ordered_json fj;
  fj["tokenizers"] = toks;
  if (!features.measures.empty()) fj["measures"] = features.measures;
  j["features"] = fj;
  j["matcher"] = {{"n_trees", matcher.n_trees},       {"max_depth", matcher.max_depth},
                  {"min_leaf", matcher.min_leaf},     {"max_features", matcher.max_features},
                  {"max_bins", matcher.max_bins},     {"seed", matcher.seed}};
  j["threshold"] = threshold;
  if (!labels.empty()) j["labels"] = labels;
  if (!truth.empty()) j["truth"] = truth;
  j["train_ratio"] = train_ratio;
  if (!model.empty()) j["model"] = model;
  j["clustering"] = {{"component_limit", clustering.component_limit}};
  j["output_dir"] = output_dir;
  j["workers"] = workers;
  j["chunk_size"] = chunk_size;
  return j.dump(2) + "\n";
}

PipelineConfig SyntheticPipelineConfig(const std::string &records, const std::string &truth,
                                       const std::string &output_dir) {
  PipelineConfig c;
  c.mode = Mode::kDedup;
  c.inputs = {records};
  c.id_column = "id";
  c.schema = SyntheticSchema();
  CleaningRule placeholder;
  placeholder.column = "phone[0-9]+";
  placeholder.column_is_pattern = true;
  placeholder.pattern = "0+";
  placeholder.action = CleaningRule::Action::kNullify;
  c.cleaning = {placeholder};
  c.indexing.features = {"last_name", "dob", "phone", "address"};
  c.indexing.maxrow = 1000;
  c.truth = truth;
  c.output_dir = output_dir;
  c.Validate();
  return c;
}

}  // namespace erkit
