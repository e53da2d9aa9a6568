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

#ifndef ERKIT_MATCHER_H_
#define ERKIT_MATCHER_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "erkit/features.h"
#include "erkit/indexing.h"

namespace erkit {

struct LabeledPair {
  CandidatePair pair;
  bool match = false;

  friend bool operator==(const LabeledPair &, const LabeledPair &) = default;
};

struct ScoredPair {
  int64_t id_a = 0;
  int64_t id_b = 0;
  double probability = 0;
};

struct ForestParams {
  int n_trees = 100;
  int max_depth = 12;
  int min_leaf = 5;
  int max_features = 0;  // 0 = floor(sqrt(feature count))
  int max_bins = 64;
  uint64_t seed = 42;
};

// One CART node. Leaves have feature == -1 and carry the tree's vote.
struct TreeNode {
  int32_t feature = -1;
  double threshold = 0;  // value <= threshold goes left
  int32_t left = -1;
  int32_t right = -1;
  bool missing_left = true;
  bool vote = false;
};

struct Tree {
  std::vector<TreeNode> nodes;  // root at 0

  bool Vote(std::span<const double> x) const;
};

// Random forest pair classifier. The match probability is the fraction of
// trees voting match. Missing features follow the side of each split that
// received more training samples.
struct MatchModel {
  static constexpr int kFormatVersion = 1;

  std::string algorithm = "random_forest";
  ForestParams params;
  std::vector<std::string> feature_names;
  std::string missing_policy = "majority_direction";
  std::string dataset_hash;
  uint64_t n_samples = 0;
  uint64_t n_positive = 0;
  double oob_accuracy = 0;
  std::vector<Tree> trees;

  double Probability(std::span<const double> x) const;

  std::string ToJson() const;
  static MatchModel FromJson(const std::string &text);
  void Save(const std::string &path) const;
  static MatchModel Load(const std::string &path);
};

// Trains on the rows of `vectors` named by `labels`. Throws UsageError for a
// single-class label set or a labeled pair absent from the matrix.
MatchModel Train(const FeatureMatrix &vectors, std::span<const LabeledPair> labels,
                 const ForestParams &params, int workers = 1);

// Scores every row. Throws when the matrix layout differs from the model's.
std::vector<ScoredPair> PredictProba(const MatchModel &model, const FeatureMatrix &vectors,
                                     int workers = 1);

// Pairs with probability >= t. Throws unless 0 <= t <= 1.
std::vector<ScoredPair> ApplyThreshold(std::span<const ScoredPair> scores, double t);

// Stratified, seeded split. ratio is the training share; per-class train
// counts are allocated by largest remainder so the overall train size is
// round(ratio * n).
std::pair<std::vector<LabeledPair>, std::vector<LabeledPair>> SplitTrainTest(
    std::span<const LabeledPair> labeled, double ratio, uint64_t seed);

void WriteLabels(std::span<const LabeledPair> labels, const std::string &path);
std::vector<LabeledPair> ReadLabels(const std::string &path);

// id_a,id_b,probability with 6 decimals.
void WriteScores(std::span<const ScoredPair> scores, const std::string &path);

// Same format, appended chunk by chunk.
class ScoreWriter {
 public:
  explicit ScoreWriter(const std::string &path);
  void Append(std::span<const ScoredPair> scores);
  void Close();

 private:
  CsvWriter out_;
};
std::vector<ScoredPair> ReadScores(const std::string &path);

}  // namespace erkit

#endif  // ERKIT_MATCHER_H_
