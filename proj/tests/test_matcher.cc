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

#include <gtest/gtest.h>

#include <set>

#include "erkit/matcher.h"
#include "erkit/rng.h"
#include "test_util.h"

namespace erkit {
namespace {

// n rows over 3 features. Feature 0 alone decides the label, like an
// exact-match feature; the others are noise, with some missing cells.
struct Labeled {
  FeatureMatrix matrix;
  std::vector<LabeledPair> labels;
};

Labeled Separable(size_t n, uint64_t seed) {
  Rng rng(seed);
  Labeled d;
  d.matrix.names = {"key", "noise1", "noise2"};
  for (size_t i = 0; i < n; ++i) {
    bool match = i % 4 == 0;
    CandidatePair p{static_cast<int64_t>(i), static_cast<int64_t>(i + n)};
    d.matrix.pairs.push_back(p);
    d.matrix.values.push_back(match ? 1.0 : 0.0);
    d.matrix.values.push_back(rng.UniformDouble());
    d.matrix.values.push_back(rng.Bernoulli(0.2) ? kMissing : rng.UniformDouble());
    d.labels.push_back({p, match});
  }
  return d;
}

ForestParams SmallForest() {
  ForestParams p;
  p.n_trees = 25;
  p.seed = 9;
  return p;
}

TEST(Train, SeparableDataHasPerfectOob) {
  Labeled d = Separable(200, 1);
  // Every split may consider the separating feature, so each tree is
  // consistent with the training data.
  ForestParams p = SmallForest();
  p.max_features = 3;
  MatchModel m = Train(d.matrix, d.labels, p);
  EXPECT_DOUBLE_EQ(m.oob_accuracy, 1.0);
  EXPECT_EQ(m.n_samples, 200u);
  EXPECT_EQ(m.n_positive, 50u);
  EXPECT_EQ(m.feature_names, d.matrix.names);
  EXPECT_EQ(m.dataset_hash.size(), 64u);
  std::vector<ScoredPair> s = PredictProba(m, d.matrix);
  for (size_t i = 0; i < s.size(); ++i) {
    if (d.labels[i].match) EXPECT_GE(s[i].probability, 0.9);
    EXPECT_GE(s[i].probability, 0.0);
    EXPECT_LE(s[i].probability, 1.0);
  }
}

TEST(Train, DefaultParamsGeneralizeOnSeparableData) {
  Labeled train = Separable(400, 11);
  Labeled test = Separable(400, 12);
  MatchModel m = Train(train.matrix, train.labels, ForestParams{});
  auto s = PredictProba(m, test.matrix);
  size_t tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    bool predicted = s[i].probability >= 0.5;
    tp += predicted && test.labels[i].match;
    fp += predicted && !test.labels[i].match;
    fn += !predicted && test.labels[i].match;
  }
  double f1 = 2.0 * tp / (2.0 * tp + fp + fn);
  EXPECT_GE(f1, 0.95);
}

TEST(Train, Errors) {
  Labeled d = Separable(40, 2);
  std::vector<LabeledPair> positives;
  for (auto l : d.labels) {
    l.match = true;
    positives.push_back(l);
  }
  try {
    Train(d.matrix, positives, SmallForest());
    FAIL() << "expected an error";
  } catch (const UsageError &e) {
    EXPECT_NE(std::string(e.what()).find("single-class training set"), std::string::npos);
  }
  std::vector<LabeledPair> unknown = d.labels;
  unknown.push_back({{999, 1000}, true});
  EXPECT_THROW(Train(d.matrix, unknown, SmallForest()), UsageError);
  std::vector<LabeledPair> dup = d.labels;
  dup.push_back(dup.front());
  EXPECT_THROW(Train(d.matrix, dup, SmallForest()), UsageError);
  ForestParams bad = SmallForest();
  bad.max_bins = 1;
  EXPECT_THROW(Train(d.matrix, d.labels, bad), UsageError);
}

TEST(Train, DeterministicAcrossRunsWorkersAndLabelOrder) {
  Labeled d = Separable(300, 3);
  std::string a = Train(d.matrix, d.labels, SmallForest(), 1).ToJson();
  std::string b = Train(d.matrix, d.labels, SmallForest(), 4).ToJson();
  std::vector<LabeledPair> reversed(d.labels.rbegin(), d.labels.rend());
  std::string c = Train(d.matrix, reversed, SmallForest(), 2).ToJson();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  ForestParams other = SmallForest();
  other.seed = 10;
  EXPECT_NE(a, Train(d.matrix, d.labels, other).ToJson());
}

TEST(Model, SaveLoadGivesIdenticalPredictions) {
  Labeled d = Separable(200, 4);
  MatchModel m = Train(d.matrix, d.labels, SmallForest());
  testing::TempDir dir("model");
  m.Save(dir.File("model.json"));
  MatchModel back = MatchModel::Load(dir.File("model.json"));
  EXPECT_EQ(back.ToJson(), m.ToJson());
  Labeled held = Separable(100, 5);
  auto p1 = PredictProba(m, held.matrix);
  auto p2 = PredictProba(back, held.matrix, 3);
  ASSERT_EQ(p1.size(), p2.size());
  for (size_t i = 0; i < p1.size(); ++i) EXPECT_EQ(p1[i].probability, p2[i].probability);
  EXPECT_THROW(MatchModel::FromJson("{\"format\":\"other\"}"), std::exception);
}

TEST(Predict, LayoutChecksAndEdgeCases) {
  Labeled d = Separable(100, 6);
  MatchModel m = Train(d.matrix, d.labels, SmallForest());
  FeatureMatrix renamed = d.matrix;
  renamed.names[1] = "other";
  EXPECT_THROW(PredictProba(m, renamed), UsageError);
  FeatureMatrix empty;
  empty.names = d.matrix.names;
  EXPECT_TRUE(PredictProba(m, empty).empty());
  FeatureMatrix missing;
  missing.names = d.matrix.names;
  missing.pairs = {{1, 2}};
  missing.values = {kMissing, kMissing, kMissing};
  auto s = PredictProba(m, missing);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_GE(s[0].probability, 0.0);
  EXPECT_LE(s[0].probability, 1.0);
}

TEST(Threshold, BoundariesAndMonotonicity) {
  std::vector<ScoredPair> s = {{1, 2, 0.3}, {1, 3, 0.95}, {2, 3, 0.99}};
  EXPECT_EQ(ApplyThreshold(s, 0.95).size(), 2u);
  EXPECT_EQ(ApplyThreshold(s, 0.0).size(), 3u);
  EXPECT_THROW(ApplyThreshold(s, 1.0 + 1e-9), UsageError);
  EXPECT_THROW(ApplyThreshold(s, -0.1), UsageError);
  Rng rng(7);
  std::vector<ScoredPair> r;
  for (int i = 0; i < 200; ++i) r.push_back({i, i + 1, rng.UniformDouble()});
  for (int k = 0; k < 10; ++k) {
    auto lo = ApplyThreshold(r, k / 10.0), hi = ApplyThreshold(r, (k + 1) / 10.0);
    std::set<int64_t> low_ids;
    for (const auto &x : lo) low_ids.insert(x.id_a);
    for (const auto &x : hi) EXPECT_TRUE(low_ids.count(x.id_a));
  }
}

std::vector<LabeledPair> MakeLabels(size_t pos, size_t neg) {
  std::vector<LabeledPair> out;
  for (size_t i = 0; i < pos + neg; ++i) {
    out.push_back({{static_cast<int64_t>(i), static_cast<int64_t>(i + 100000)}, i < pos});
  }
  return out;
}

TEST(Split, SizesStratificationAndDeterminism) {
  auto labels = MakeLabels(900, 9100);
  auto [train, test] = SplitTrainTest(labels, 0.7, 42);
  EXPECT_EQ(train.size(), 7000u);
  EXPECT_EQ(test.size(), 3000u);
  size_t train_pos = std::count_if(train.begin(), train.end(), [](auto &l) { return l.match; });
  EXPECT_EQ(train_pos, 630u);
  std::set<CandidatePair> all;
  for (const auto &l : train) all.insert(l.pair);
  for (const auto &l : test) EXPECT_TRUE(all.insert(l.pair).second);
  EXPECT_EQ(all.size(), labels.size());
  auto again = SplitTrainTest(labels, 0.7, 42);
  EXPECT_EQ(again.first, train);
  EXPECT_NE(SplitTrainTest(labels, 0.7, 43).first, train);

  auto [t2, s2] = SplitTrainTest(MakeLabels(2, 2), 0.5, 1);
  ASSERT_EQ(t2.size(), 2u);
  ASSERT_EQ(s2.size(), 2u);
  EXPECT_NE(t2[0].match, t2[1].match);
  EXPECT_NE(s2[0].match, s2[1].match);

  EXPECT_THROW(SplitTrainTest(MakeLabels(1, 10), 0.7, 1), UsageError);
  EXPECT_THROW(SplitTrainTest(MakeLabels(0, 10), 0.7, 1), UsageError);
  EXPECT_THROW(SplitTrainTest(labels, 1.0, 1), UsageError);
}

TEST(Files, LabelsAndScoresRoundTrip) {
  testing::TempDir dir("mfiles");
  auto labels = MakeLabels(3, 4);
  WriteLabels(labels, dir.File("l.csv"));
  EXPECT_EQ(ReadLabels(dir.File("l.csv")), labels);
  std::vector<ScoredPair> s = {{1, 2, 0.5}, {3, 4, 0.123456}};
  WriteScores(s, dir.File("s.csv"));
  EXPECT_EQ(ReadFile(dir.File("s.csv")), "id_a,id_b,probability\n1,2,0.500000\n3,4,0.123456\n");
  auto back = ReadScores(dir.File("s.csv"));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].probability, 0.123456);
  dir.Write("bad.csv", "id_a,id_b,label\n1,2,7\n");
  EXPECT_THROW(ReadLabels(dir.File("bad.csv")), std::exception);
}

}  // namespace
}  // namespace erkit
