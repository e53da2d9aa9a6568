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

#include "erkit/clustering.h"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "erkit/common.h"
#include "erkit/io.h"

namespace erkit {

MatchGraph BuildGraph(std::span<const ScoredPair> edges, bool weighted) {
  MatchGraph g;
  g.edges.reserve(edges.size());
  for (const auto &e : edges) {
    if (e.id_a == e.id_b) {
      throw UsageError("build_graph: self-loop on record " + std::to_string(e.id_a));
    }
    double w = weighted ? e.probability : 1.0;
    if (!(w > 0.0 && w <= 1.0)) {
      throw UsageError("build_graph: edge weight " + FormatDouble(w) +
                       " outside (0, 1]");
    }
    g.edges.push_back({std::min(e.id_a, e.id_b), std::max(e.id_a, e.id_b), w});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const WeightedEdge &a, const WeightedEdge &b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  size_t out = 0;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (out > 0 && g.edges[out - 1].u == g.edges[i].u && g.edges[out - 1].v == g.edges[i].v) {
      if (g.edges[out - 1].weight != g.edges[i].weight) {
        throw UsageError("build_graph: conflicting weights for edge (" +
                         std::to_string(g.edges[i].u) + "," + std::to_string(g.edges[i].v) +
                         ")");
      }
      continue;
    }
    g.edges[out++] = g.edges[i];
  }
  g.edges.resize(out);
  for (const auto &e : g.edges) {
    g.vertices.push_back(e.u);
    g.vertices.push_back(e.v);
  }
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
  return g;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  size_t Find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;  // the root is the smallest index
  }

 private:
  std::vector<size_t> parent_;
};

size_t VertexIndex(const std::vector<int64_t> &vertices, int64_t id) {
  return static_cast<size_t>(std::lower_bound(vertices.begin(), vertices.end(), id) -
                             vertices.begin());
}

// Components as (vertex indices, edge indices); ordered by minimum vertex.
struct Partition {
  std::vector<std::vector<size_t>> vertices;
  std::vector<std::vector<size_t>> edges;
};

Partition Partition_(const std::vector<int64_t> &vertices,
                     const std::vector<WeightedEdge> &edges) {
  UnionFind uf(vertices.size());
  std::vector<std::pair<size_t, size_t>> ends(edges.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    ends[i] = {VertexIndex(vertices, edges[i].u), VertexIndex(vertices, edges[i].v)};
    uf.Union(ends[i].first, ends[i].second);
  }
  Partition p;
  std::vector<size_t> slot(vertices.size(), SIZE_MAX);
  // Vertices are sorted, so roots appear in ascending min-id order.
  for (size_t i = 0; i < vertices.size(); ++i) {
    size_t r = uf.Find(i);
    if (slot[r] == SIZE_MAX) {
      slot[r] = p.vertices.size();
      p.vertices.emplace_back();
      p.edges.emplace_back();
    }
    p.vertices[slot[r]].push_back(i);
  }
  for (size_t i = 0; i < edges.size(); ++i) p.edges[slot[uf.Find(ends[i].first)]].push_back(i);
  return p;
}

using Bits = std::vector<uint64_t>;

// Dense subgraph over local vertex indices 0..n-1 (ids ascending).
class DenseGraph {
 public:
  DenseGraph(std::vector<int64_t> ids, std::span<const WeightedEdge> edges)
      : ids_(std::move(ids)), n_(ids_.size()), words_((n_ + 63) / 64), w_(n_ * n_, 0.0),
        adj_(n_, Bits(words_, 0)) {
    for (const auto &e : edges) {
      size_t a = VertexIndex(ids_, e.u);
      size_t b = VertexIndex(ids_, e.v);
      w_[a * n_ + b] = w_[b * n_ + a] = e.weight;
      adj_[a][b / 64] |= uint64_t{1} << (b % 64);
      adj_[b][a / 64] |= uint64_t{1} << (a % 64);
    }
  }

  size_t size() const { return n_; }
  int64_t id(size_t i) const { return ids_[i]; }
  double weight(size_t a, size_t b) const { return w_[a * n_ + b]; }
  Bits Empty() const { return Bits(words_, 0); }
  Bits Full() const {
    Bits b(words_, ~uint64_t{0});
    if (n_ % 64) b.back() = (uint64_t{1} << (n_ % 64)) - 1;
    if (n_ == 0) b.clear();
    return b;
  }

  // Maximal cliques of the subgraph induced by `alive`, members ascending.
  std::vector<std::vector<size_t>> MaximalCliques(const Bits &alive) const {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> r;
    Expand(r, alive, Empty(), out);
    for (auto &c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  bool HasEdge(const Bits &alive) const {
    for (size_t i = 0; i < n_; ++i) {
      if (!Test(alive, i)) continue;
      for (size_t k = 0; k < words_; ++k) {
        if (adj_[i][k] & alive[k]) return true;
      }
    }
    return false;
  }

  static bool Test(const Bits &b, size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
  static void Clear(Bits &b, size_t i) { b[i / 64] &= ~(uint64_t{1} << (i % 64)); }
  static void Set(Bits &b, size_t i) { b[i / 64] |= uint64_t{1} << (i % 64); }

 private:
  // Bron-Kerbosch with Tomita pivoting.
  void Expand(std::vector<size_t> &r, Bits p, Bits x,
              std::vector<std::vector<size_t>> &out) const {
    bool p_empty = std::all_of(p.begin(), p.end(), [](uint64_t w) { return w == 0; });
    bool x_empty = std::all_of(x.begin(), x.end(), [](uint64_t w) { return w == 0; });
    if (p_empty) {
      if (x_empty && !r.empty()) out.push_back(r);
      return;
    }
    size_t pivot = 0;
    int best = -1;
    for (size_t k = 0; k < words_; ++k) {
      uint64_t cand = p[k] | x[k];
      while (cand) {
        size_t u = k * 64 + static_cast<size_t>(std::countr_zero(cand));
        cand &= cand - 1;
        int count = 0;
        for (size_t j = 0; j < words_; ++j) count += std::popcount(p[j] & adj_[u][j]);
        if (count > best) {
          best = count;
          pivot = u;
        }
      }
    }
    for (size_t k = 0; k < words_; ++k) {
      uint64_t todo = p[k] & ~adj_[pivot][k];
      while (todo) {
        size_t v = k * 64 + static_cast<size_t>(std::countr_zero(todo));
        todo &= todo - 1;
        Bits np(words_);
        Bits nx(words_);
        for (size_t j = 0; j < words_; ++j) {
          np[j] = p[j] & adj_[v][j];
          nx[j] = x[j] & adj_[v][j];
        }
        r.push_back(v);
        Expand(r, std::move(np), std::move(nx), out);
        r.pop_back();
        Clear(p, v);
        Set(x, v);
      }
    }
  }

  std::vector<int64_t> ids_;
  size_t n_;
  size_t words_;
  std::vector<double> w_;
  std::vector<Bits> adj_;
};

// loss(a, b) over local indices: weight b loses when a is removed.
double DenseLoss(const DenseGraph &g, const std::vector<size_t> &a,
                 const std::vector<size_t> &b) {
  std::vector<size_t> shared;
  std::vector<size_t> rest;
  for (size_t v : b) {
    (std::binary_search(a.begin(), a.end(), v) ? shared : rest).push_back(v);
  }
  double loss = 0;
  for (size_t u : shared) {
    for (size_t v : rest) loss += g.weight(u, v);
  }
  return loss;
}

double InternalWeight(const DenseGraph &g, const std::vector<size_t> &c) {
  double w = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    for (size_t j = i + 1; j < c.size(); ++j) w += g.weight(c[i], c[j]);
  }
  return w;
}

struct ComponentOutput {
  std::vector<EntityCluster> clusters;
  std::vector<ClusterStep> steps;
  std::vector<WeightedEdge> removed;
  bool degraded = false;
};

// Disjoint-clique extraction on one piece that fits the limit.
void ExtractPiece(const DenseGraph &g, int64_t component_min, bool degraded,
                  ComponentOutput &out) {
  Bits alive = g.Full();
  auto emit = [&](const std::vector<size_t> &c, double iw, size_t candidates, double key) {
    EntityCluster cluster;
    for (size_t v : c) cluster.members.push_back(g.id(v));
    cluster.internal_weight = iw;
    ClusterStep step;
    step.component_min_id = component_min;
    step.step = out.steps.size();
    step.candidates = candidates;
    step.selection_key = key;
    step.degraded = degraded;
    out.clusters.push_back(std::move(cluster));
    out.steps.push_back(step);
    for (size_t v : c) DenseGraph::Clear(alive, v);
  };

  while (g.HasEdge(alive)) {
    auto cliques = g.MaximalCliques(alive);
    size_t max_size = 0;
    for (const auto &c : cliques) max_size = std::max(max_size, c.size());
    std::vector<std::vector<size_t>> cand;
    for (auto &c : cliques) {
      if (c.size() == max_size) cand.push_back(std::move(c));
    }
    const size_t k = cand.size();
    std::vector<double> loss(k * k, 0.0);
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = 0; j < k; ++j) {
        if (i != j) loss[i * k + j] = DenseLoss(g, cand[i], cand[j]);
      }
    }
    size_t best = 0;
    double best_key = 0;
    double best_iw = 0;
    for (size_t i = 0; i < k; ++i) {
      double key = 0;
      for (size_t j = 0; j < k; ++j) {
        if (j != i) key += loss[j * k + i] - loss[i * k + j];
      }
      double iw = InternalWeight(g, cand[i]);
      // Candidates are in lexicographic order, so strict comparisons keep the
      // smallest member list on full ties.
      if (i == 0 || key > best_key || (key == best_key && iw > best_iw)) {
        best = i;
        best_key = key;
        best_iw = iw;
      }
    }
    emit(cand[best], best_iw, k, best_key);
  }
  for (size_t v = 0; v < g.size(); ++v) {
    if (DenseGraph::Test(alive, v)) emit({v}, 0.0, 1, 0.0);
  }
}

// Splits an oversized piece by dropping its lowest-weight edges, the fewest
// that disconnect it, and recurses on pieces still over the limit.
void SplitAndExtract(const std::vector<int64_t> &ids, std::vector<WeightedEdge> edges,
                     size_t limit, int64_t component_min, ComponentOutput &out) {
  if (ids.size() <= limit) {
    ExtractPiece(DenseGraph(ids, edges), component_min, out.degraded, out);
    return;
  }
  out.degraded = true;
  std::vector<WeightedEdge> order = edges;
  std::sort(order.begin(), order.end(), [](const WeightedEdge &a, const WeightedEdge &b) {
    return std::tie(a.weight, a.u, a.v) < std::tie(b.weight, b.u, b.v);
  });
  auto pieces_after = [&](size_t drop) {
    std::vector<WeightedEdge> kept(order.begin() + static_cast<long>(drop), order.end());
    UnionFind uf(ids.size());
    size_t count = ids.size();
    for (const auto &e : kept) {
      size_t a = uf.Find(VertexIndex(ids, e.u));
      size_t b = uf.Find(VertexIndex(ids, e.v));
      if (a != b) {
        uf.Union(a, b);
        --count;
      }
    }
    return count;
  };
  size_t lo = 1;
  size_t hi = order.size();
  while (lo < hi) {
    size_t mid = lo + (hi - lo) / 2;
    if (pieces_after(mid) > 1) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.removed.insert(out.removed.end(), order.begin(), order.begin() + static_cast<long>(lo));
  std::vector<WeightedEdge> kept(order.begin() + static_cast<long>(lo), order.end());
  std::sort(kept.begin(), kept.end(), [](const WeightedEdge &a, const WeightedEdge &b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  Partition parts = Partition_(ids, kept);
  for (size_t p = 0; p < parts.vertices.size(); ++p) {
    std::vector<int64_t> sub_ids;
    for (size_t v : parts.vertices[p]) sub_ids.push_back(ids[v]);
    std::vector<WeightedEdge> sub_edges;
    for (size_t e : parts.edges[p]) sub_edges.push_back(kept[e]);
    SplitAndExtract(sub_ids, std::move(sub_edges), limit, component_min, out);
  }
}

}  // namespace

std::vector<std::vector<int64_t>> ConnectedComponents(const MatchGraph &g) {
  Partition p = Partition_(g.vertices, g.edges);
  std::vector<std::vector<int64_t>> out;
  for (const auto &vs : p.vertices) {
    std::vector<int64_t> ids;
    for (size_t v : vs) ids.push_back(g.vertices[v]);
    out.push_back(std::move(ids));
  }
  return out;
}

std::vector<std::vector<int64_t>> MaximalCliques(const MatchGraph &g) {
  Partition p = Partition_(g.vertices, g.edges);
  std::vector<std::vector<int64_t>> out;
  for (size_t c = 0; c < p.vertices.size(); ++c) {
    std::vector<int64_t> ids;
    for (size_t v : p.vertices[c]) ids.push_back(g.vertices[v]);
    std::vector<WeightedEdge> edges;
    for (size_t e : p.edges[c]) edges.push_back(g.edges[e]);
    DenseGraph dense(ids, edges);
    for (const auto &clique : dense.MaximalCliques(dense.Full())) {
      std::vector<int64_t> members;
      for (size_t v : clique) members.push_back(dense.id(v));
      out.push_back(std::move(members));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double EdgeWeightLoss(std::span<const int64_t> a, std::span<const int64_t> b,
                      const MatchGraph &g) {
  std::unordered_set<int64_t> in_a(a.begin(), a.end());
  std::unordered_set<int64_t> shared;
  std::unordered_set<int64_t> rest;
  for (int64_t v : b) (in_a.count(v) ? shared : rest).insert(v);
  double loss = 0;
  for (const auto &e : g.edges) {
    if ((shared.count(e.u) && rest.count(e.v)) || (shared.count(e.v) && rest.count(e.u))) {
      loss += e.weight;
    }
  }
  return loss;
}

ClusterResult DisjointCliques(const MatchGraph &g, const ClusterOptions &options,
                              int workers) {
  if (options.component_limit < 2) {
    throw UsageError("clique_component_limit must be >= 2");
  }
  Partition p = Partition_(g.vertices, g.edges);
  std::vector<ComponentOutput> outputs(p.vertices.size());
  ParallelEach(p.vertices.size(), workers, [&](size_t c) {
    std::vector<int64_t> ids;
    for (size_t v : p.vertices[c]) ids.push_back(g.vertices[v]);
    std::vector<WeightedEdge> edges;
    for (size_t e : p.edges[c]) edges.push_back(g.edges[e]);
    int64_t min_id = ids.front();
    SplitAndExtract(ids, std::move(edges), options.component_limit, min_id, outputs[c]);
  });
  ClusterResult result;
  for (auto &o : outputs) {
    for (size_t i = 0; i < o.clusters.size(); ++i) {
      o.clusters[i].entity_id = static_cast<int64_t>(result.clusters.size());
      result.clusters.push_back(std::move(o.clusters[i]));
      result.steps.push_back(o.steps[i]);
    }
    result.removed_edges.insert(result.removed_edges.end(), o.removed.begin(),
                                o.removed.end());
    if (o.degraded) ++result.degraded_components;
  }
  return result;
}

std::vector<EntityAssignment> AssignEntityIds(std::span<const EntityCluster> clusters,
                                              std::span<const int64_t> record_ids) {
  std::unordered_set<int64_t> known(record_ids.begin(), record_ids.end());
  std::unordered_set<int64_t> used;
  std::vector<EntityAssignment> out;
  int64_t next = 0;
  for (const auto &c : clusters) {
    std::vector<int64_t> members = c.members;
    std::sort(members.begin(), members.end());
    for (int64_t id : members) {
      if (!known.count(id)) {
        throw UsageError("assign_entity_ids: record " + std::to_string(id) +
                         " is not in the dataset");
      }
      if (!used.insert(id).second) {
        throw UsageError("assign_entity_ids: overlapping clusters at record " +
                         std::to_string(id));
      }
      out.push_back({id, next, members.size(), c.internal_weight});
    }
    ++next;
  }
  std::vector<int64_t> rest;
  for (int64_t id : record_ids) {
    if (!used.count(id)) rest.push_back(id);
  }
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  for (int64_t id : rest) out.push_back({id, next++, 1, 0.0});
  return out;
}

void WriteAssignments(std::span<const EntityAssignment> rows, const std::string &path) {
  CsvWriter out(path);
  out.WriteRaw("record_id,entity_id,cluster_size,internal_weight");
  for (const auto &r : rows) {
    out.WriteRaw(std::to_string(r.record_id) + "," + std::to_string(r.entity_id) + "," +
                 std::to_string(r.cluster_size) + "," + FormatFixed(r.internal_weight, 6));
  }
  out.Close();
}

std::vector<EntityCluster> ReadClusters(const std::string &path) {
  CsvReader in(path);
  std::vector<std::string> f;
  if (!in.Next(f) || f.size() != 4 || f[0] != "record_id") {
    throw UsageError(path + ": expected header record_id,entity_id,cluster_size,internal_weight");
  }
  std::map<int64_t, EntityCluster> by_entity;
  while (in.Next(f)) {
    auto rid = f.size() == 4 ? ParseInt(f[0]) : std::nullopt;
    auto eid = f.size() == 4 ? ParseInt(f[1]) : std::nullopt;
    if (!rid || !eid) {
      throw UsageError(path + ":" + std::to_string(in.line()) + ": invalid cluster row");
    }
    auto &c = by_entity[*eid];
    c.entity_id = *eid;
    c.members.push_back(*rid);
    c.internal_weight = ParseDouble(f[3]).value_or(0.0);
  }
  std::vector<EntityCluster> out;
  for (auto &[id, c] : by_entity) {
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

void WriteClusterSteps(const ClusterResult &result, const std::string &path) {
  CsvWriter out(path);
  out.WriteRaw(
      "entity_id,component_min_id,step,size,internal_weight,candidates,selection_key,"
      "degraded,members");
  for (size_t i = 0; i < result.clusters.size(); ++i) {
    const auto &c = result.clusters[i];
    const auto &s = result.steps[i];
    std::string members;
    for (int64_t m : c.members) {
      if (!members.empty()) members.push_back(' ');
      members += std::to_string(m);
    }
    out.WriteRaw(std::to_string(c.entity_id) + "," + std::to_string(s.component_min_id) + "," +
                 std::to_string(s.step) + "," + std::to_string(c.members.size()) + "," +
                 FormatFixed(c.internal_weight, 6) + "," + std::to_string(s.candidates) + "," +
                 FormatFixed(s.selection_key, 6) + "," + (s.degraded ? "1" : "0") + "," +
                 members);
  }
  out.Close();
}

void WriteRemovedEdges(const ClusterResult &result, const std::string &path) {
  CsvWriter out(path);
  out.WriteRaw("u,v,weight");
  for (const auto &e : result.removed_edges) {
    out.WriteRaw(std::to_string(e.u) + "," + std::to_string(e.v) + "," +
                 FormatFixed(e.weight, 6));
  }
  out.Close();
}

}  // namespace erkit
