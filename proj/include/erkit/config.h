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

#ifndef ERKIT_CONFIG_H_
#define ERKIT_CONFIG_H_

#include <map>
#include <string>
#include <vector>

#include "erkit/cleaning.h"
#include "erkit/clustering.h"
#include "erkit/common.h"
#include "erkit/features.h"
#include "erkit/indexing.h"
#include "erkit/matcher.h"
#include "erkit/schema.h"
#include "erkit/table.h"

namespace erkit {

// Pipeline configuration, read from a JSON document. Unknown keys are
// rejected. Relative paths resolve against the config file's directory.
struct PipelineConfig {
  Mode mode = Mode::kDedup;
  std::vector<std::string> inputs;
  char delimiter = ',';
  std::string id_column;
  std::map<std::string, DataType> column_types;
  AttributeSchema schema;
  std::vector<CleaningRule> cleaning;
  int profile_top_k = 20;
  IndexingConfig indexing;
  FeatureOptions features;
  ForestParams matcher;
  double threshold = 0.5;
  std::string labels;       // labeled pairs for training
  std::string truth;        // truth pairs; candidates are labeled from it
  double train_ratio = 0.7; // share of truth-derived labels used for training
  std::string model;        // pretrained model, used when no labels are given
  ClusterOptions clustering;
  std::string output_dir = "out";
  int workers = 1;
  size_t chunk_size = 100000;  // pairs per featurization/scoring chunk

  bool HasTrainingData() const { return !labels.empty() || !truth.empty(); }

  // Structural checks that need no data. Throws UsageError.
  void Validate() const;

  static PipelineConfig FromJson(const std::string &text, const std::string &base_dir = "");
  static PipelineConfig Load(const std::string &path);
  // Canonical JSON (absolute paths) used for fingerprints and examples.
  std::string ToJson() const;
};

// Config for a dedup run over generate_synthetic output written with an "id"
// column: blocking on last_name, dob, phone and address, placeholder phones
// nullified, labels derived from the truth file.
PipelineConfig SyntheticPipelineConfig(const std::string &records, const std::string &truth,
                                       const std::string &output_dir);

}  // namespace erkit

#endif  // ERKIT_CONFIG_H_
