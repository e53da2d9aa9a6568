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

#ifndef ERKIT_EVALUATION_H_
#define ERKIT_EVALUATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "erkit/clustering.h"
#include "erkit/common.h"
#include "erkit/indexing.h"

namespace erkit {

// All within-cluster pairs (a < b), sorted. Singletons contribute nothing.
// Throws UsageError when clusters overlap.
std::vector<CandidatePair> ClustersToPairs(std::span<const EntityCluster> clusters);

struct EvaluationReport {
  uint64_t true_positives = 0;
  uint64_t false_positives = 0;
  uint64_t false_negatives = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;

  std::string ToJson() const;
};

// Pair-level precision, recall and F1 over the distinct pairs of each side.
// An empty side scores 1.0 only when the other side is empty too. In dedup
// mode pairs must be canonical (id_a < id_b).
EvaluationReport PairwiseMetrics(std::span<const CandidatePair> predicted,
                                 std::span<const CandidatePair> truth,
                                 Mode mode = Mode::kDedup);

}  // namespace erkit

#endif  // ERKIT_EVALUATION_H_
