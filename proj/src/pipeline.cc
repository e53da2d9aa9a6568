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

#include "erkit/pipeline.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <ostream>
#include <unordered_set>

#include "erkit/cleaning.h"
#include "erkit/clustering.h"
#include "erkit/dictionary.h"
#include "erkit/evaluation.h"
#include "erkit/features.h"
#include "erkit/indexing.h"
#include "erkit/io.h"
#include "erkit/matcher.h"
#include "erkit/profile.h"
#include "json.hpp"

namespace erkit {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr char kManifestFile[] = "manifest.json";
constexpr char kIdColumn[] = "_id";

std::vector<std::string> SideNames(Mode mode, const std::string &stem, const std::string &ext) {
  if (mode == Mode::kDedup) return {stem + ext};
  return {stem + "_left" + ext, stem + "_right" + ext};
}

}  // namespace

const char *StageName(Stage stage) {
  switch (stage) {
    case Stage::kProfile:
      return "profile";
    case Stage::kClean:
      return "clean";
    case Stage::kEncode:
      return "encode";
    case Stage::kIndex:
      return "index";
    case Stage::kFeaturize:
      return "featurize";
    case Stage::kTrain:
      return "train";
    case Stage::kScore:
      return "score";
    case Stage::kCluster:
      return "cluster";
  }
  return "?";
}

Stage ParseStage(const std::string &name) {
  for (Stage s : kAllStages) {
    if (name == StageName(s)) return s;
  }
  throw UsageError("unknown stage '" + name + "'");
}

const StageRecord *Manifest::Find(const std::string &name) const {
  for (const auto &s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string Manifest::ToJson() const {
  ojson j;
  j["format"] = "erkit-manifest";
  j["version"] = 1;
  auto arr = ojson::array();
  for (const auto &s : stages) {
    ojson r;
    r["name"] = s.name;
    r["status"] = s.status;
    r["fingerprint"] = s.fingerprint;
    r["inputs"] = s.inputs;
    r["artifacts"] = s.artifacts;
    r["summary"] = s.summary;
    r["seconds"] = s.seconds;
    arr.push_back(std::move(r));
  }
  j["stages"] = std::move(arr);
  return j.dump(2) + "\n";
}

Manifest Manifest::FromJson(const std::string &text) {
  Manifest m;
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto &r : j.at("stages")) {
      StageRecord s;
      s.name = r.at("name").get<std::string>();
      s.status = r.at("status").get<std::string>();
      s.fingerprint = r.at("fingerprint").get<std::string>();
      s.inputs = r.at("inputs").get<std::map<std::string, std::string>>();
      s.artifacts = r.at("artifacts").get<std::map<std::string, std::string>>();
      s.summary = r.at("summary").get<std::map<std::string, std::string>>();
      s.seconds = r.at("seconds").get<double>();
      m.stages.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception &e) {
    throw UsageError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

struct Pipeline::State {
  std::optional<std::vector<Table>> clean;
  std::optional<AttributeSchema> schema;
};

struct Pipeline::StagePlan {
  Stage stage;
  ojson params;
  std::vector<std::string> inputs;     // files whose content the stage reads
  std::vector<std::string> artifacts;  // relative to the output dir
  std::function<void(StageRecord &)> body;
};

Pipeline::Pipeline(PipelineConfig config, RunOptions options)
    : config_(std::move(config)), options_(options), state_(std::make_unique<State>()) {
  config_.Validate();
  std::string manifest_path = Path(kManifestFile);
  if (fs::exists(manifest_path)) {
    try {
      previous_ = Manifest::FromJson(ReadFile(manifest_path));
    } catch (const UsageError &) {
      previous_ = {};  // unreadable manifest: rebuild everything
    }
  }
}

Pipeline::~Pipeline() = default;

std::string Pipeline::Path(const std::string &artifact) const {
  return (fs::path(config_.output_dir) / artifact).string();
}

std::string Pipeline::ModelPath() const {
  return config_.HasTrainingData() ? Path("model.json") : config_.model;
}

const Manifest &Pipeline::Run() {
  return RunThrough(config_.mode == Mode::kDedup ? Stage::kCluster : Stage::kScore);
}

const Manifest &Pipeline::RunThrough(Stage last) {
  if (last >= Stage::kScore && !config_.HasTrainingData()) {
    if (config_.model.empty()) throw UsageError("no model: supply labels or a trained model");
    if (!fs::exists(config_.model)) throw UsageError("model file not found: " + config_.model);
  }
  if (last == Stage::kCluster && config_.mode == Mode::kLink) {
    throw UsageError("clustering applies to dedup mode only");
  }
  for (const auto &in : config_.inputs) {
    if (!fs::exists(in)) throw UsageError("input file not found: " + in);
  }
  fs::create_directories(config_.output_dir);
  manifest_ = {};
  using Step = void (Pipeline::*)();
  const std::pair<Stage, Step> steps[] = {
      {Stage::kProfile, &Pipeline::RunProfile},     {Stage::kClean, &Pipeline::RunClean},
      {Stage::kEncode, &Pipeline::RunEncode},       {Stage::kIndex, &Pipeline::RunIndex},
      {Stage::kFeaturize, &Pipeline::RunFeaturize}, {Stage::kTrain, &Pipeline::RunTrain},
      {Stage::kScore, &Pipeline::RunScore},         {Stage::kCluster, &Pipeline::RunCluster}};
  for (const auto &[stage, step] : steps) {
    if (stage > last) break;
    (this->*step)();
  }
  // Keep records of later stages from earlier runs so the manifest still
  // describes everything on disk.
  for (const auto &old : previous_.stages) {
    if (manifest_.Find(old.name) == nullptr && ParseStage(old.name) > last) {
      manifest_.stages.push_back(old);
    }
  }
  SaveManifest();
  previous_ = manifest_;
  return manifest_;
}

void Pipeline::SaveManifest() const { WriteFile(Path(kManifestFile), manifest_.ToJson()); }

void Pipeline::Execute(StagePlan &plan) {
  const std::string name = StageName(plan.stage);
  StageRecord record;
  record.name = name;
  for (const auto &in : plan.inputs) {
    if (!fs::exists(in)) {
      throw UsageError("stage '" + name + "': missing input " + in);
    }
    record.inputs[in] = Sha256File(in);
  }
  ojson fp;
  fp["stage"] = name;
  fp["params"] = plan.params;
  fp["inputs"] = record.inputs;
  record.fingerprint = Sha256Hex(fp.dump());

  const StageRecord *prev = previous_.Find(name);
  if (!options_.force && prev != nullptr && prev->fingerprint == record.fingerprint) {
    bool intact = prev->artifacts.size() == plan.artifacts.size();
    for (const auto &a : plan.artifacts) {
      auto it = prev->artifacts.find(a);
      if (!intact || it == prev->artifacts.end() || !fs::exists(Path(a)) ||
          Sha256File(Path(a)) != it->second) {
        intact = false;
        break;
      }
    }
    if (intact) {
      StageRecord kept = *prev;
      kept.status = kStatusSkipped;
      manifest_.stages.push_back(kept);
      if (options_.log) *options_.log << name << ": " << kStatusSkipped << "\n";
      return;
    }
  }

  for (const auto &a : plan.artifacts) fs::remove(Path(a));
  auto start = std::chrono::steady_clock::now();
  try {
    plan.body(record);
  } catch (const std::exception &e) {
    for (const auto &a : plan.artifacts) fs::remove(Path(a));
    // Anything raised inside a stage is a stage failure, whatever its cause.
    throw Error("stage '" + name + "' failed: " + e.what());
  }
  record.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto &a : plan.artifacts) {
    if (!fs::exists(Path(a))) throw Error("stage '" + name + "' did not write " + a);
    record.artifacts[a] = Sha256File(Path(a));
  }
  record.status = kStatusRan;
  manifest_.stages.push_back(record);
  SaveManifest();
  if (options_.log) {
    *options_.log << name << ": ran in " << FormatFixed(record.seconds, 2) << "s";
    for (const auto &[k, v] : record.summary) *options_.log << " " << k << "=" << v;
    *options_.log << "\n";
  }
}

std::map<std::string, DataType> Pipeline::DeclaredTypes() const {
  std::map<std::string, DataType> types = config_.column_types;
  for (const auto &a : config_.schema.attributes) {
    for (const auto &c : a.columns) types[c] = a.type;
  }
  return types;
}

std::vector<std::string> Pipeline::CleanPaths() const {
  std::vector<std::string> out;
  for (const auto &n : SideNames(config_.mode, "clean", ".csv")) out.push_back(Path(n));
  return out;
}

const std::vector<Table> &Pipeline::CleanTables() {
  if (!state_->clean) {
    LoadOptions lo;
    lo.id_column = config_.id_column.empty() ? kIdColumn : config_.id_column;
    lo.declared_types = DeclaredTypes();
    std::vector<Table> tables;
    for (const auto &p : CleanPaths()) tables.push_back(LoadDataset(p, lo).table);
    state_->clean = std::move(tables);
  }
  return *state_->clean;
}

const AttributeSchema &Pipeline::EffectiveSchema() {
  if (!state_->schema) {
    AttributeSchema s = config_.schema;
    for (const auto &t : CleanTables()) s = s.RestrictTo(t);
    for (const auto &t : CleanTables()) s.ValidateAgainst(t);
    state_->schema = std::move(s);
  }
  return *state_->schema;
}

void Pipeline::RunProfile() {
  StagePlan plan;
  plan.stage = Stage::kProfile;
  plan.params = {{"top_k", config_.profile_top_k},
                 {"delimiter", std::string(1, config_.delimiter)},
                 {"id_column", config_.id_column}};
  plan.inputs = config_.inputs;
  plan.artifacts = SideNames(config_.mode, "profile", ".jsonl");
  plan.body = [&](StageRecord &rec) {
    LoadOptions lo;
    lo.delimiter = config_.delimiter;
    lo.id_column = config_.id_column;
    lo.declared_types = DeclaredTypes();
    for (size_t i = 0; i < config_.inputs.size(); ++i) {
      LoadResult loaded = LoadDataset(config_.inputs[i], lo);
      ProfileReport report = Profile(loaded.table, config_.profile_top_k, config_.workers);
      WriteFile(Path(plan.artifacts[i]), report.ToJsonLines());
      rec.summary["rows" + std::to_string(i)] = std::to_string(loaded.table.num_rows());
    }
  };
  Execute(plan);
}

void Pipeline::RunClean() {
  StagePlan plan;
  plan.stage = Stage::kClean;
  ojson params = nlohmann::ordered_json::parse(config_.ToJson());
  plan.params = {{"cleaning", params["cleaning"]},
                 {"schema", params["schema"]},
                 {"column_types", params.value("column_types", ojson::object())},
                 {"delimiter", std::string(1, config_.delimiter)},
                 {"id_column", config_.id_column}};
  plan.inputs = config_.inputs;
  plan.artifacts = SideNames(config_.mode, "clean", ".csv");
  plan.artifacts.push_back("cleaning_report.json");
  plan.body = [&](StageRecord &rec) {
    LoadOptions lo;
    lo.delimiter = config_.delimiter;
    lo.id_column = config_.id_column;
    lo.declared_types = DeclaredTypes();
    std::vector<Table> tables;
    ojson report;
    auto applied = ojson::array();
    size_t parse_warnings = 0;
    size_t type_warnings = 0;
    for (const auto &in : config_.inputs) {
      LoadResult loaded = LoadDataset(in, lo);
      config_.schema.ValidateAgainst(loaded.table);
      parse_warnings += loaded.parse_warnings;
      CleaningResult cleaned = ApplyCleaningRules(loaded.table, config_.cleaning, config_.workers);
      type_warnings += cleaned.type_warnings;
      applied.push_back(cleaned.applied_counts);
      tables.push_back(std::move(cleaned.table));
    }
    // Drop columns that are constant in every input.
    std::vector<std::vector<std::string>> constant;
    for (const auto &t : tables) constant.push_back(DropConstantColumns(t).removed);
    std::vector<std::string> removed = constant[0];
    for (size_t i = 1; i < constant.size(); ++i) {
      std::vector<std::string> keep;
      for (const auto &c : removed) {
        if (std::find(constant[i].begin(), constant[i].end(), c) != constant[i].end()) {
          keep.push_back(c);
        }
      }
      removed = keep;
    }
    for (auto &t : tables) {
      std::vector<Column> cols;
      for (auto &c : t.columns) {
        if (std::find(removed.begin(), removed.end(), c.name) == removed.end()) {
          cols.push_back(std::move(c));
        }
      }
      t.columns = std::move(cols);
    }
    std::vector<std::string> dropped_attributes;
    AttributeSchema effective = config_.schema;
    for (const auto &t : tables) effective = effective.RestrictTo(t, &dropped_attributes);
    for (const auto &f : config_.indexing.features) {
      if (effective.Find(f) == nullptr) {
        throw UsageError("blocking attribute '" + f + "' lost all its columns as constant");
      }
    }
    const std::string id_name = config_.id_column.empty() ? kIdColumn : config_.id_column;
    for (size_t i = 0; i < tables.size(); ++i) {
      WriteTable(tables[i], Path(plan.artifacts[i]), ',', id_name);
    }
    report["applied_counts"] = applied;
    report["parse_warnings"] = parse_warnings;
    report["type_warnings"] = type_warnings;
    report["removed_constant_columns"] = removed;
    report["dropped_attributes"] = dropped_attributes;
    WriteFile(Path("cleaning_report.json"), report.dump(2) + "\n");
    rec.summary["removed_columns"] = std::to_string(removed.size());
    // Later stages reload from disk so they see identical data whether or
    // not this stage ran in the same process.
    state_->clean.reset();
    state_->schema.reset();
  };
  Execute(plan);
}

void Pipeline::RunEncode() {
  StagePlan plan;
  plan.stage = Stage::kEncode;
  plan.params = {{"features", config_.indexing.features}};
  plan.inputs = CleanPaths();
  for (const auto &f : config_.indexing.features) plan.artifacts.push_back("dict_" + f + ".csv");
  plan.body = [&](StageRecord &rec) {
    const auto &tables = CleanTables();
    auto dicts = EncodeAttributes(tables, EffectiveSchema(), config_.indexing.features);
    size_t total = 0;
    for (const auto &f : config_.indexing.features) {
      dicts.at(f).Save(Path("dict_" + f + ".csv"));
      total += dicts.at(f).size();
    }
    rec.summary["codes"] = std::to_string(total);
  };
  Execute(plan);
}

void Pipeline::RunIndex() {
  StagePlan plan;
  plan.stage = Stage::kIndex;
  plan.params = {{"features", config_.indexing.features},
                 {"maxrow", config_.indexing.maxrow},
                 {"mode", ModeName(config_.mode)}};
  plan.inputs = CleanPaths();
  plan.artifacts = {"pairs.csv", "index_stats.json"};
  plan.body = [&](StageRecord &rec) {
    IndexOutput out =
        IndexDataset(CleanTables(), EffectiveSchema(), config_.indexing, config_.workers);
    WritePairs(out.result.pairs, Path("pairs.csv"), config_.mode);
    WriteFile(Path("index_stats.json"), out.result.stats.ToJson());
    rec.summary["pairs"] = std::to_string(out.result.pairs.size());
    rec.summary["groups"] = std::to_string(out.result.stats.total_groups());
  };
  Execute(plan);
}

void Pipeline::RunFeaturize() {
  StagePlan plan;
  plan.stage = Stage::kFeaturize;
  ojson params = nlohmann::ordered_json::parse(config_.ToJson());
  plan.params = {{"features", params["features"]}, {"schema", params["schema"]}};
  plan.inputs = CleanPaths();
  plan.inputs.push_back(Path("pairs.csv"));
  plan.artifacts = {"features.csv"};
  plan.body = [&](StageRecord &rec) {
    const auto &tables = CleanTables();
    const AttributeSchema &schema = EffectiveSchema();
    FeatureSpec spec = FeatureSpec::Derive(schema, config_.features);
    const Table &left = tables[0];
    const Table &right = tables.size() > 1 ? tables[1] : tables[0];
    Featurizer featurizer(schema, spec, left, right);
    std::vector<CandidatePair> pairs = ReadPairs(Path("pairs.csv"));
    FeatureMatrixWriter writer(Path("features.csv"), spec.Names());
    for (size_t begin = 0; begin < pairs.size(); begin += config_.chunk_size) {
      size_t end = std::min(pairs.size(), begin + config_.chunk_size);
      std::span<const CandidatePair> chunk(pairs.data() + begin, end - begin);
      writer.Append(featurizer.ComputeAll(chunk, config_.workers));
    }
    writer.Close();
    rec.summary["rows"] = std::to_string(pairs.size());
    rec.summary["features"] = std::to_string(spec.size());
  };
  Execute(plan);
}

void Pipeline::RunTrain() {
  if (!config_.HasTrainingData()) {
    StageRecord rec;
    rec.name = StageName(Stage::kTrain);
    rec.status = "skipped (pretrained model)";
    manifest_.stages.push_back(rec);
    if (options_.log) *options_.log << "train: skipped (pretrained model " << config_.model << ")\n";
    return;
  }
  StagePlan plan;
  plan.stage = Stage::kTrain;
  ojson params = nlohmann::ordered_json::parse(config_.ToJson());
  plan.params = {{"matcher", params["matcher"]}};
  plan.inputs = {Path("features.csv")};
  bool from_truth = !config_.truth.empty();
  if (from_truth) {
    plan.params["train_ratio"] = config_.train_ratio;
    plan.inputs.push_back(config_.truth);
    plan.artifacts = {"labels_train.csv", "labels_test.csv", "model.json"};
  } else {
    plan.inputs.push_back(config_.labels);
    plan.artifacts = {"model.json"};
  }
  plan.body = [&, from_truth](StageRecord &rec) {
    FeatureMatrix matrix = ReadFeatureMatrix(Path("features.csv"));
    std::vector<LabeledPair> labels;
    if (from_truth) {
      std::vector<CandidatePair> truth = ReadPairs(config_.truth);
      std::sort(truth.begin(), truth.end());
      std::vector<LabeledPair> all;
      all.reserve(matrix.rows());
      for (const auto &p : matrix.pairs) {
        all.push_back({p, std::binary_search(truth.begin(), truth.end(), p)});
      }
      auto [train, test] = SplitTrainTest(all, config_.train_ratio, config_.matcher.seed);
      WriteLabels(train, Path("labels_train.csv"));
      WriteLabels(test, Path("labels_test.csv"));
      labels = std::move(train);
    } else {
      labels = ReadLabels(config_.labels);
    }
    MatchModel model = Train(matrix, labels, config_.matcher, config_.workers);
    model.Save(Path("model.json"));
    rec.summary["labels"] = std::to_string(labels.size());
    rec.summary["oob_accuracy"] = FormatFixed(model.oob_accuracy, 4);
  };
  Execute(plan);
}

void Pipeline::RunScore() {
  StagePlan plan;
  plan.stage = Stage::kScore;
  plan.params = {{"threshold", config_.threshold}};
  plan.inputs = {Path("features.csv"), ModelPath()};
  plan.artifacts = {"scores.csv", "matches.csv"};
  plan.body = [&](StageRecord &rec) {
    MatchModel model = MatchModel::Load(ModelPath());
    FeatureMatrixReader reader(Path("features.csv"));
    ScoreWriter scores_out(Path("scores.csv"));
    ScoreWriter matches_out(Path("matches.csv"));
    FeatureMatrix chunk;
    uint64_t scored = 0;
    uint64_t matched = 0;
    while (reader.Next(chunk, config_.chunk_size)) {
      std::vector<ScoredPair> scores = PredictProba(model, chunk, config_.workers);
      std::vector<ScoredPair> matches = ApplyThreshold(scores, config_.threshold);
      scores_out.Append(scores);
      matches_out.Append(matches);
      scored += scores.size();
      matched += matches.size();
    }
    if (reader.names() != model.feature_names) {
      // An empty feature file still has to match the model's layout.
      FeatureMatrix empty;
      empty.names = reader.names();
      PredictProba(model, empty);
    }
    scores_out.Close();
    matches_out.Close();
    rec.summary["scored"] = std::to_string(scored);
    rec.summary["matches"] = std::to_string(matched);
  };
  Execute(plan);
}

void Pipeline::RunCluster() {
  if (config_.mode != Mode::kDedup) return;
  StagePlan plan;
  plan.stage = Stage::kCluster;
  plan.params = {{"component_limit", config_.clustering.component_limit}};
  plan.inputs = {Path("matches.csv"), CleanPaths()[0]};
  plan.artifacts = {"clusters.csv", "cluster_steps.csv", "removed_edges.csv"};
  plan.body = [&](StageRecord &rec) {
    // Matches are re-read from disk so the stage sees exactly the persisted
    // (6-decimal) weights regardless of whether scoring ran in this process.
    std::vector<ScoredPair> matches = ReadScores(Path("matches.csv"));
    // Graph weights must be positive; a zero threshold can admit p = 0.
    std::erase_if(matches, [](const ScoredPair &s) { return s.probability <= 0.0; });
    MatchGraph graph = BuildGraph(matches);
    ClusterResult result = DisjointCliques(graph, config_.clustering, config_.workers);
    const Table &table = CleanTables()[0];
    std::vector<EntityAssignment> rows = AssignEntityIds(result.clusters, table.row_ids);
    WriteAssignments(rows, Path("clusters.csv"));
    WriteClusterSteps(result, Path("cluster_steps.csv"));
    WriteRemovedEdges(result, Path("removed_edges.csv"));
    rec.summary["clusters"] = std::to_string(result.clusters.size());
    rec.summary["degraded_components"] = std::to_string(result.degraded_components);
  };
  Execute(plan);
}

}  // namespace erkit
