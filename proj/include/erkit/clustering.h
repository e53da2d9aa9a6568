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

#ifndef ERKIT_CLUSTERING_H_
#define ERKIT_CLUSTERING_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "erkit/matcher.h"

namespace erkit {

struct WeightedEdge {
  int64_t u = 0;  // u < v
  int64_t v = 0;
  double weight = 1.0;

  friend bool operator==(const WeightedEdge &, const WeightedEdge &) = default;
};

// Undirected weighted graph over record ids. Vertices are exactly the edge
// endpoints, sorted ascending; edges are canonical and sorted by (u, v).
struct MatchGraph {
  std::vector<int64_t> vertices;
  std::vector<WeightedEdge> edges;
};

// Builds the graph from scored pairs. With weighted == false every weight is
// 1. Throws UsageError for self-loops, weights outside (0, 1] and duplicate
// edges whose weights disagree; agreeing duplicates collapse.
MatchGraph BuildGraph(std::span<const ScoredPair> edges, bool weighted = true);

// Partition of the vertices, each component sorted, components ordered by
// their minimum id.
std::vector<std::vector<int64_t>> ConnectedComponents(const MatchGraph &g);

// All maximal cliques, members sorted, cliques in lexicographic order.
std::vector<std::vector<int64_t>> MaximalCliques(const MatchGraph &g);

// Sum of weights of edges joining a vertex of (a ∩ b) to a vertex of (b - a):
// the weight b loses when a's vertices are removed.
double EdgeWeightLoss(std::span<const int64_t> a, std::span<const int64_t> b,
                      const MatchGraph &g);

struct EntityCluster {
  int64_t entity_id = -1;
  std::vector<int64_t> members;  // sorted
  double internal_weight = 0;
};

// Audit record for one extraction.
struct ClusterStep {
  int64_t component_min_id = 0;
  size_t step = 0;         // extraction index within the component
  size_t candidates = 0;   // maximum-size cliques considered
  double selection_key = 0;
  bool degraded = false;   // component exceeded the size limit
};

struct ClusterOptions {
  size_t component_limit = 500;
};

struct ClusterResult {
  std::vector<EntityCluster> clusters;  // entity_id = position
  std::vector<ClusterStep> steps;       // parallel to clusters
  std::vector<WeightedEdge> removed_edges;
  size_t degraded_components = 0;
};

// Greedy disjoint-clique extraction. Per component, repeatedly take the
// maximum-size maximal cliques of the current graph, select the one with the
// largest key(c) = sum over other candidates c' of
// loss(c', c) - loss(c, c'), breaking ties by larger internal weight and then
// the smallest member list, and remove its vertices. Components larger than
// the limit first lose their lowest-weight edges until every piece fits.
ClusterResult DisjointCliques(const MatchGraph &g, const ClusterOptions &options = {},
                              int workers = 1);

struct EntityAssignment {
  int64_t record_id = 0;
  int64_t entity_id = 0;
  size_t cluster_size = 0;
  double internal_weight = 0;
};

// Dense entity ids: clusters keep their order, then every record id not in a
// cluster becomes a singleton in ascending id order. Rows are ordered by
// (entity_id, record_id). Throws UsageError for overlapping clusters or
// members absent from record_ids.
std::vector<EntityAssignment> AssignEntityIds(std::span<const EntityCluster> clusters,
                                              std::span<const int64_t> record_ids);

void WriteAssignments(std::span<const EntityAssignment> rows, const std::string &path);
std::vector<EntityCluster> ReadClusters(const std::string &path);
// Extraction order with per-step diagnostics.
void WriteClusterSteps(const ClusterResult &result, const std::string &path);
// Edges dropped to bring oversized components under the limit.
void WriteRemovedEdges(const ClusterResult &result, const std::string &path);

}  // namespace erkit

#endif  // ERKIT_CLUSTERING_H_
