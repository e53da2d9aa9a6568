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

#ifndef ERKIT_PIPELINE_H_
#define ERKIT_PIPELINE_H_

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "erkit/config.h"

namespace erkit {

enum class Stage { kProfile, kClean, kEncode, kIndex, kFeaturize, kTrain, kScore, kCluster };

inline constexpr Stage kAllStages[] = {Stage::kProfile,   Stage::kClean, Stage::kEncode,
                                       Stage::kIndex,     Stage::kFeaturize,
                                       Stage::kTrain,     Stage::kScore, Stage::kCluster};

const char *StageName(Stage stage);
Stage ParseStage(const std::string &name);

inline constexpr char kStatusRan[] = "ran";
inline constexpr char kStatusSkipped[] = "skipped (up-to-date)";

struct StageRecord {
  std::string name;
  std::string status;
  std::string fingerprint;                       // hash of parameters and inputs
  std::map<std::string, std::string> inputs;     // path -> sha256
  std::map<std::string, std::string> artifacts;  // path relative to output dir -> sha256
  std::map<std::string, std::string> summary;
  double seconds = 0;
};

struct Manifest {
  std::vector<StageRecord> stages;  // pipeline order

  const StageRecord *Find(const std::string &name) const;
  std::string ToJson() const;
  static Manifest FromJson(const std::string &text);
};

struct RunOptions {
  bool force = false;
  std::ostream *log = nullptr;
};

// Runs pipeline stages against an output directory. Each stage records its
// inputs, artifacts and timing in manifest.json and is skipped when a previous
// run with the same parameters and input hashes left intact artifacts.
class Pipeline {
 public:
  Pipeline(PipelineConfig config, RunOptions options = {});
  ~Pipeline();

  // Runs every stage that applies to the configured mode.
  const Manifest &Run();
  // Runs stages in order up to and including `last`.
  const Manifest &RunThrough(Stage last);

  const PipelineConfig &config() const { return config_; }
  const Manifest &manifest() const { return manifest_; }
  std::string Path(const std::string &artifact) const;

 private:
  struct State;
  struct StagePlan;

  void Execute(StagePlan &plan);
  void SaveManifest() const;

  void RunProfile();
  void RunClean();
  void RunEncode();
  void RunIndex();
  void RunFeaturize();
  void RunTrain();
  void RunScore();
  void RunCluster();

  std::vector<std::string> CleanPaths() const;
  const std::vector<Table> &CleanTables();
  const AttributeSchema &EffectiveSchema();
  std::map<std::string, DataType> DeclaredTypes() const;
  std::string ModelPath() const;

  PipelineConfig config_;
  RunOptions options_;
  Manifest manifest_;
  Manifest previous_;
  std::unique_ptr<State> state_;
};

}  // namespace erkit

#endif  // ERKIT_PIPELINE_H_
