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

// Independent reference implementations used by the unit and acceptance
// tests. They favour obviousness over speed.

#ifndef ERKIT_TESTS_ORACLES_H_
#define ERKIT_TESTS_ORACLES_H_

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "erkit/clustering.h"
#include "erkit/indexing.h"
#include "erkit/rng.h"
#include "erkit/schema.h"
#include "erkit/table.h"

namespace erkit::oracle {

// ---------------------------------------------------------------- blocking

struct IndexCase {
  std::vector<Table> tables;
  AttributeSchema schema;
  IndexingConfig config;
};

// Random tables over small vocabularies so values collide often. Attributes
// are scalar or list (2-3 columns); about 10% of cells are null.
inline IndexCase RandomIndexCase(Rng &rng, size_t max_records, bool allow_link = true) {
  IndexCase c;
  size_t nf = 1 + rng.Uniform(4);
  std::vector<size_t> vocab;
  std::vector<std::string> columns;
  for (size_t f = 0; f < nf; ++f) {
    Attribute a;
    a.name = "f" + std::to_string(f);
    bool list = rng.Bernoulli(0.5);
    a.kind = list ? AttributeKind::kList : AttributeKind::kScalar;
    size_t ncols = list ? 2 + rng.Uniform(2) : 1;
    for (size_t k = 0; k < ncols; ++k) {
      a.columns.push_back(a.name + "_" + std::to_string(k));
      columns.push_back(a.columns.back());
      vocab.push_back(f);
    }
    c.schema.attributes.push_back(a);
    c.config.features.push_back(a.name);
  }
  std::vector<size_t> vocab_size(nf);
  for (auto &v : vocab_size) v = 2 + rng.Uniform(60);
  const size_t sizes[] = {5, 50, 1000};
  c.config.maxrow = sizes[rng.Uniform(3)];
  c.config.mode = allow_link && rng.Bernoulli(0.25) ? Mode::kLink : Mode::kDedup;
  size_t ntables = c.config.mode == Mode::kLink ? 2 : 1;
  for (size_t t = 0; t < ntables; ++t) {
    Table table;
    table.name = "t" + std::to_string(t);
    size_t n = 1 + rng.Uniform(max_records / ntables);
    for (const auto &col : columns) table.columns.push_back({col, DataType::kText, {}});
    for (size_t r = 0; r < n; ++r) {
      // Ids overlap across link inputs on purpose.
      table.row_ids.push_back(static_cast<int64_t>(r * 3 + t));
      for (size_t k = 0; k < columns.size(); ++k) {
        if (rng.Bernoulli(0.1)) {
          table.columns[k].cells.push_back(std::nullopt);
        } else {
          table.columns[k].cells.push_back(
              "v" + std::to_string(rng.Uniform(vocab_size[vocab[k]])));
        }
      }
    }
    c.tables.push_back(std::move(table));
  }
  return c;
}

// Distinct non-null values of one attribute for one row, or {nullopt}.
inline std::vector<std::optional<std::string>> ValuesOf(const Table &t, const Attribute &a,
                                                        size_t row) {
  std::set<std::string> seen;
  std::vector<std::optional<std::string>> out;
  for (const auto &c : a.columns) {
    const Cell &cell = t.GetColumn(c).cells[row];
    if (cell && seen.insert(*cell).second) out.push_back(*cell);
  }
  if (out.empty()) out.push_back(std::nullopt);
  return out;
}

// Pair (a, b) is a candidate iff for some feature subset S the records share
// a fully non-null value tuple on S whose holder count is <= maxrow. Checked
// pair by pair over all record pairs.
inline std::set<CandidatePair> BruteForcePairs(const IndexCase &c) {
  struct Rec {
    int64_t id;
    int source;
    std::vector<std::vector<std::optional<std::string>>> values;  // per feature
  };
  std::vector<Rec> recs;
  for (size_t t = 0; t < c.tables.size(); ++t) {
    const Table &table = c.tables[t];
    for (size_t r = 0; r < table.num_rows(); ++r) {
      Rec rec{table.row_ids[r], static_cast<int>(t), {}};
      for (const auto &f : c.config.features) {
        rec.values.push_back(ValuesOf(table, c.schema.Get(f), r));
      }
      recs.push_back(std::move(rec));
    }
  }
  const size_t nf = c.config.features.size();
  // Per subset and record: the set of value tuples (joined) it holds.
  std::vector<std::vector<std::set<std::string>>> tuples(size_t{1} << nf);
  std::vector<std::map<std::string, size_t>> holders(size_t{1} << nf);
  for (size_t mask = 1; mask < (size_t{1} << nf); ++mask) {
    tuples[mask].resize(recs.size());
    for (size_t i = 0; i < recs.size(); ++i) {
      std::vector<std::string> partial = {""};
      bool has_null = false;
      for (size_t f = 0; f < nf; ++f) {
        if (!(mask >> f & 1)) continue;
        std::vector<std::string> next;
        for (const auto &p : partial) {
          for (const auto &v : recs[i].values[f]) {
            if (!v) {
              has_null = true;
              continue;
            }
            next.push_back(p + "\x1f" + *v);
          }
        }
        partial = std::move(next);
      }
      (void)has_null;
      for (const auto &p : partial) tuples[mask][i].insert(p);
      for (const auto &p : tuples[mask][i]) ++holders[mask][p];
    }
  }
  std::set<CandidatePair> out;
  for (size_t i = 0; i < recs.size(); ++i) {
    for (size_t j = i + 1; j < recs.size(); ++j) {
      if (c.config.mode == Mode::kLink && recs[i].source == recs[j].source) continue;
      if (c.config.mode == Mode::kDedup && recs[i].id == recs[j].id) continue;
      bool hit = false;
      for (size_t mask = 1; mask < (size_t{1} << nf) && !hit; ++mask) {
        for (const auto &t : tuples[mask][i]) {
          if (tuples[mask][j].count(t) && holders[mask][t] <= c.config.maxrow) {
            hit = true;
            break;
          }
        }
      }
      if (!hit) continue;
      if (c.config.mode == Mode::kLink) {
        const Rec &l = recs[i].source == 0 ? recs[i] : recs[j];
        const Rec &r = recs[i].source == 0 ? recs[j] : recs[i];
        out.insert({l.id, r.id});
      } else {
        out.insert({std::min(recs[i].id, recs[j].id), std::max(recs[i].id, recs[j].id)});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- strings

// Textbook full-matrix edit distance.
inline size_t Levenshtein(const std::u32string &a, const std::u32string &b) {
  std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

// ---------------------------------------------------------------- graphs

inline std::vector<std::set<int64_t>> BfsComponents(const MatchGraph &g) {
  std::map<int64_t, std::vector<int64_t>> adj;
  for (int64_t v : g.vertices) adj[v];
  for (const auto &e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::set<int64_t> seen;
  std::vector<std::set<int64_t>> out;
  for (const auto &[start, unused] : adj) {
    if (seen.count(start)) continue;
    std::set<int64_t> comp;
    std::queue<int64_t> q;
    q.push(start);
    seen.insert(start);
    while (!q.empty()) {
      int64_t v = q.front();
      q.pop();
      comp.insert(v);
      for (int64_t w : adj[v]) {
        if (seen.insert(w).second) q.push(w);
      }
    }
    out.push_back(comp);
  }
  return out;
}

// Small graph as a dense weight matrix over vertices 0..n-1 (0 = no edge).
struct SmallGraph {
  size_t n = 0;
  std::vector<std::vector<double>> w;

  bool IsClique(uint32_t mask) const {
    for (size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      for (size_t j = i + 1; j < n; ++j) {
        if ((mask >> j & 1) && w[i][j] == 0) return false;
      }
    }
    return true;
  }

  MatchGraph ToMatchGraph() const {
    std::vector<ScoredPair> edges;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (w[i][j] > 0) edges.push_back({int64_t(i), int64_t(j), w[i][j]});
      }
    }
    return BuildGraph(edges);
  }
};

inline std::vector<int64_t> Members(uint32_t mask, size_t n) {
  std::vector<int64_t> m;
  for (size_t i = 0; i < n; ++i) {
    if (mask >> i & 1) m.push_back(static_cast<int64_t>(i));
  }
  return m;
}

// Largest clique size among vertices in `alive`, by enumerating subsets.
inline size_t MaxCliqueSize(const SmallGraph &g, uint32_t alive) {
  size_t best = 0;
  for (uint32_t s = alive;; s = (s - 1) & alive) {
    if (s != 0 && g.IsClique(s)) best = std::max<size_t>(best, std::popcount(s));
    if (s == 0) break;
  }
  return best;
}

// Weight b loses when a is removed: edges from a ∩ b to b - a.
inline double Loss(const SmallGraph &g, uint32_t a, uint32_t b) {
  double loss = 0;
  for (size_t u = 0; u < g.n; ++u) {
    if (!((a & b) >> u & 1)) continue;
    for (size_t v = 0; v < g.n; ++v) {
      if (((b & ~a) >> v & 1)) loss += g.w[u][v];
    }
  }
  return loss;
}

inline double Internal(const SmallGraph &g, uint32_t c) {
  double w = 0;
  for (size_t i = 0; i < g.n; ++i) {
    for (size_t j = i + 1; j < g.n; ++j) {
      if ((c >> i & 1) && (c >> j & 1)) w += g.w[i][j];
    }
  }
  return w;
}

// Greedy extraction over the whole graph, candidates drawn from every vertex
// subset that is a clique of the current graph. Returns member lists in
// extraction order.
inline std::vector<std::vector<int64_t>> DisjointCliquesOracle(const SmallGraph &g) {
  std::vector<std::vector<int64_t>> out;
  uint32_t alive = g.n == 32 ? ~0u : (1u << g.n) - 1;
  while (alive) {
    size_t m = MaxCliqueSize(g, alive);
    std::vector<uint32_t> cand;
    for (uint32_t s = alive; s; s = (s - 1) & alive) {
      if (static_cast<size_t>(std::popcount(s)) == m && g.IsClique(s)) cand.push_back(s);
    }
    std::sort(cand.begin(), cand.end(), [&](uint32_t a, uint32_t b) {
      return Members(a, g.n) < Members(b, g.n);
    });
    size_t best = 0;
    double best_key = 0, best_iw = 0;
    for (size_t i = 0; i < cand.size(); ++i) {
      double key = 0;
      for (size_t j = 0; j < cand.size(); ++j) {
        if (j != i) key += Loss(g, cand[j], cand[i]) - Loss(g, cand[i], cand[j]);
      }
      double iw = Internal(g, cand[i]);
      if (i == 0 || key > best_key || (key == best_key && iw > best_iw)) {
        best = i;
        best_key = key;
        best_iw = iw;
      }
    }
    out.push_back(Members(cand[best], g.n));
    alive &= ~cand[best];
  }
  return out;
}

// Random graph with edge probability p. Weights are multiples of 1/64 when
// dyadic, so every sum is exact and tie-breaking is order independent.
inline SmallGraph RandomSmallGraph(Rng &rng, size_t n, double p, bool dyadic) {
  SmallGraph g;
  g.n = n;
  g.w.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (!rng.Bernoulli(p)) continue;
      double w = dyadic ? static_cast<double>(1 + rng.Uniform(64)) / 64.0
                        : 0.01 + 0.99 * rng.UniformDouble();
      g.w[i][j] = g.w[j][i] = w;
    }
  }
  return g;
}

}  // namespace erkit::oracle

#endif  // ERKIT_TESTS_ORACLES_H_
