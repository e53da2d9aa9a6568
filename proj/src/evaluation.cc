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

#include "erkit/evaluation.h"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"

namespace erkit {

std::vector<CandidatePair> ClustersToPairs(std::span<const EntityCluster> clusters) {
  std::unordered_set<int64_t> seen;
  std::vector<CandidatePair> out;
  for (const auto &c : clusters) {
    std::vector<int64_t> m = c.members;
    std::sort(m.begin(), m.end());
    for (int64_t id : m) {
      if (!seen.insert(id).second) {
        throw UsageError("clusters_to_pairs: overlapping clusters at record " +
                         std::to_string(id));
      }
    }
    for (size_t i = 0; i < m.size(); ++i) {
      for (size_t j = i + 1; j < m.size(); ++j) out.push_back({m[i], m[j]});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<CandidatePair> Canonical(std::span<const CandidatePair> pairs, Mode mode,
                                     const char *side) {
  std::vector<CandidatePair> out(pairs.begin(), pairs.end());
  if (mode == Mode::kDedup) {
    for (const auto &p : out) {
      if (p.id_a >= p.id_b) {
        throw UsageError(std::string("pairwise_metrics: non-canonical ") + side + " pair (" +
                         std::to_string(p.id_a) + "," + std::to_string(p.id_b) + ")");
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

EvaluationReport PairwiseMetrics(std::span<const CandidatePair> predicted,
                                 std::span<const CandidatePair> truth, Mode mode) {
  auto p = Canonical(predicted, mode, "predicted");
  auto t = Canonical(truth, mode, "truth");
  std::vector<CandidatePair> common;
  std::set_intersection(p.begin(), p.end(), t.begin(), t.end(), std::back_inserter(common));
  EvaluationReport r;
  r.true_positives = common.size();
  r.false_positives = p.size() - common.size();
  r.false_negatives = t.size() - common.size();
  auto ratio = [](uint64_t num, uint64_t den, bool other_empty) {
    if (den == 0) return other_empty ? 1.0 : 0.0;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  r.precision = ratio(r.true_positives, p.size(), t.empty());
  r.recall = ratio(r.true_positives, t.size(), p.empty());
  r.f1 = r.precision + r.recall == 0
             ? 0.0
             : 2 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

std::string EvaluationReport::ToJson() const {
  nlohmann::ordered_json j;
  j["true_positives"] = true_positives;
  j["false_positives"] = false_positives;
  j["false_negatives"] = false_negatives;
  j["precision"] = precision;
  j["recall"] = recall;
  j["f1"] = f1;
  return j.dump(2) + "\n";
}

}  // namespace erkit
