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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
// ERKIT_ACCEPTANCE_ONLY=1,4 runs a subset. ERKIT_ACCEPTANCE_KEEP=1 keeps the
// scratch directory.

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "erkit/clustering.h"
#include "erkit/config.h"
#include "erkit/evaluation.h"
#include "erkit/indexing.h"
#include "erkit/pipeline.h"
#include "erkit/similarity.h"
#include "erkit/synthetic.h"
#include "json.hpp"
#include "oracles.h"

namespace fs = std::filesystem;
using namespace erkit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

fs::path g_scratch;

// Shared between criteria 6, 7 and 8.
struct BenchmarkRun {
  bool done = false;
  std::string config_path;
  fs::path out_dir;
};
BenchmarkRun g_bench;

// ------------------------------------------------------------------ 1

Outcome BlockingOracle() {
  Rng rng(20260101);
  size_t discrepancies = 0;
  size_t total_pairs = 0;
  std::map<size_t, int> by_maxrow;
  int link_cases = 0;
  for (int i = 0; i < 50; ++i) {
    oracle::IndexCase c = oracle::RandomIndexCase(rng, 1000);
    IndexResult r = IndexDataset(c.tables, c.schema, c.config).result;
    std::set<CandidatePair> got(r.pairs.begin(), r.pairs.end());
    std::set<CandidatePair> want = oracle::BruteForcePairs(c);
    std::vector<CandidatePair> diff;
    std::set_symmetric_difference(got.begin(), got.end(), want.begin(), want.end(),
                                  std::back_inserter(diff));
    discrepancies += diff.size();
    total_pairs += want.size();
    ++by_maxrow[c.config.maxrow];
    link_cases += c.config.mode == Mode::kLink;
  }
  std::ostringstream d;
  d << "50 cases (" << link_cases << " link; maxrow 5/50/1000: " << by_maxrow[5] << "/"
    << by_maxrow[50] << "/" << by_maxrow[1000] << "), " << total_pairs
    << " oracle pairs, " << discrepancies << " discrepancies";
  return {discrepancies == 0, d.str()};
}

// ------------------------------------------------------------------ 2

Outcome ListAttributeExpansion() {
  Table t;
  t.name = "people";
  t.row_ids = {10001};
  const std::vector<std::pair<std::string, std::string>> cells = {
      {"dob", "1978-03-19"},
      {"phone1", "0511111111"},
      {"phone2", "0533333333"},
      {"phone3", "0599999999"},
      {"address1", "2 Acadaca St Sydney 2000"},
      {"address2", "4 Down Under Rd Perth 6000"}};
  for (const auto &[name, value] : cells) t.columns.push_back({name, DataType::kText, {value}});
  AttributeSchema s;
  s.attributes = {{"dob", AttributeKind::kScalar, {"dob"}, DataType::kText},
                  {"phone", AttributeKind::kList, {"phone1", "phone2", "phone3"}, DataType::kText},
                  {"address", AttributeKind::kList, {"address1", "address2"}, DataType::kText}};
  std::vector<std::string> f = {"dob", "phone", "address"};
  std::vector<Table> tables = {t};
  auto dicts = EncodeAttributes(tables, s, f);
  ExpandedTable e = ExpandRows(t, s, f, dicts);

  std::set<std::vector<std::string>> got;
  for (size_t r = 0; r < e.num_rows(); ++r) {
    std::vector<std::string> tuple;
    for (size_t k = 0; k < f.size(); ++k) tuple.push_back(dicts.at(f[k]).Decode(e.code(r, k)));
    got.insert(tuple);
  }
  std::set<std::vector<std::string>> want;
  for (size_t p = 1; p <= 3; ++p) {
    for (size_t a = 4; a <= 5; ++a) want.insert({cells[0].second, cells[p].second, cells[a].second});
  }
  bool ids_ok = std::all_of(e.row_record.begin(), e.row_record.end(),
                            [&](uint32_t r) { return e.record_ids[r] == 10001; });
  std::ostringstream d;
  d << e.num_rows() << " expanded rows, " << got.size() << " distinct tuples, tuples "
    << (got == want ? "match" : "DIFFER");
  return {e.num_rows() == 6 && got == want && ids_ok, d.str()};
}

// ------------------------------------------------------------------ 3

std::string RandomString(Rng &rng) {
  static const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e",  " ",
                                                    "x", "y", "\xc3\xa9", "\xe2\x82\xac"};
  std::string s;
  size_t n = rng.Uniform(21);
  for (size_t i = 0; i < n; ++i) s += rng.Pick(alphabet);
  return s;
}

Outcome SimilaritySuite() {
  Rng rng(7);
  size_t lev_mismatch = 0;
  for (int i = 0; i < 10000; ++i) {
    std::u32string a = DecodeUtf8(RandomString(rng)), b = DecodeUtf8(RandomString(rng));
    if (rng.Bernoulli(0.3)) b = a.substr(0, a.size() / 2) + b.substr(0, b.size() / 2);
    lev_mismatch += LevenshteinDistance(a, b) != oracle::Levenshtein(a, b);
  }
  const Measure measures[] = {Measure::kOverlapCoefficient, Measure::kDice, Measure::kCosine,
                              Measure::kJaccard,           Measure::kLevenshtein,
                              Measure::kJaro,              Measure::kJaroWinkler,
                              Measure::kExactMatch,        Measure::kMongeElkan};
  const Tokenizer tokenizers[] = {{Tokenizer::Kind::kQgram, 3}, {Tokenizer::Kind::kWhitespace, 0}};
  size_t range = 0, symmetry = 0, identity = 0, checks = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string a = RandomString(rng), b = RandomString(rng);
    for (Measure m : measures) {
      for (const Tokenizer &tok : tokenizers) {
        if (!IsTokenMeasure(m) && tok.kind == Tokenizer::Kind::kWhitespace) continue;
        auto score = [&](const std::string &x, const std::string &y) {
          return IsTokenMeasure(m) ? TokenSimilarity(Tokenize(x, tok), Tokenize(y, tok), m)
                                   : StringSimilarity(x, y, m);
        };
        double ab = score(a, b), ba = score(b, a);
        ++checks;
        range += !(ab >= 0.0 && ab <= 1.0);
        symmetry += std::abs(ab - ba) > 1e-12;
        bool has_token = a.find_first_not_of(' ') != std::string::npos;
        if (!a.empty() && (tok.kind != Tokenizer::Kind::kWhitespace || has_token) &&
            (m != Measure::kMongeElkan || has_token)) {
          identity += std::abs(score(a, a) - 1.0) > 1e-12;
        }
      }
    }
  }
  std::ostringstream d;
  d << "levenshtein mismatches " << lev_mismatch << "/10000; " << checks
    << " measure checks: range " << range << ", symmetry " << symmetry << ", identity "
    << identity << " violations";
  return {lev_mismatch + range + symmetry + identity == 0, d.str()};
}

// ------------------------------------------------------------------ 4

Outcome EdgeWeightLossExample() {
  enum : int64_t { A = 1, B, C, W, X, Y };
  std::vector<ScoredPair> e;
  auto clique = [&](std::vector<int64_t> m) {
    for (size_t i = 0; i < m.size(); ++i) {
      for (size_t j = i + 1; j < m.size(); ++j) e.push_back({m[i], m[j], 0.95});
    }
  };
  clique({A, B, W, X});
  clique({B, C, X, Y});
  MatchGraph g = BuildGraph(e);
  std::vector<int64_t> bcxy = {B, C, X, Y}, abwx = {A, B, W, X};
  double loss = EdgeWeightLoss(bcxy, abwx, g);
  std::ostringstream d;
  d.precision(12);
  d << "loss(BCXY, ABWX) = " << loss;
  return {std::abs(loss - 3.80) <= 1e-9, d.str()};
}

// ------------------------------------------------------------------ 5

Outcome DisjointCliqueSuite() {
  Rng rng(5);
  size_t violations = 0, clusters = 0;
  for (int i = 0; i < 500; ++i) {
    size_t n = 1 + rng.Uniform(12);
    oracle::SmallGraph sg = oracle::RandomSmallGraph(rng, n, 0.2 + 0.7 * rng.UniformDouble(), false);
    MatchGraph g = sg.ToMatchGraph();
    ClusterResult r = DisjointCliques(g);
    clusters += r.clusters.size();

    // Disjoint, vertex-exhaustive, and a clique of the graph state at
    // extraction (extraction only removes vertices, so cliqueness in the
    // original graph is equivalent).
    std::set<int64_t> seen;
    for (const auto &c : r.clusters) {
      uint32_t mask = 0;
      for (int64_t v : c.members) {
        violations += !seen.insert(v).second;
        mask |= 1u << v;
      }
      violations += !sg.IsClique(mask);
    }
    violations += seen != std::set<int64_t>(g.vertices.begin(), g.vertices.end());

    // First extraction has maximum clique size. Components are processed
    // independently and emitted in component order, so this is checked for
    // the first cluster of every component and for the graph as a whole.
    uint32_t all = 0;
    for (int64_t v : g.vertices) all |= 1u << v;
    size_t global_max = g.vertices.empty() ? 0 : oracle::MaxCliqueSize(sg, all);
    size_t first_max = 0;
    std::set<int64_t> components_seen;
    for (size_t k = 0; k < r.clusters.size(); ++k) {
      if (!components_seen.insert(r.steps[k].component_min_id).second) continue;
      uint32_t comp = 0;
      for (const auto &cc : ConnectedComponents(g)) {
        if (cc.front() == r.steps[k].component_min_id) {
          for (int64_t v : cc) comp |= 1u << v;
        }
      }
      violations += r.clusters[k].members.size() != oracle::MaxCliqueSize(sg, comp);
      first_max = std::max(first_max, r.clusters[k].members.size());
    }
    violations += first_max != global_max;
  }
  std::ostringstream d;
  d << "500 graphs, " << clusters << " clusters, " << violations << " violations";
  return {violations == 0, d.str()};
}

// ------------------------------------------------------------------ 6

double TestSplitF1(const fs::path &out, EvaluationReport *report) {
  std::vector<LabeledPair> labels = ReadLabels((out / "labels_test.csv").string());
  std::vector<CandidatePair> labeled, truth;
  for (const auto &l : labels) {
    labeled.push_back(l.pair);
    if (l.match) truth.push_back(l.pair);
  }
  std::sort(labeled.begin(), labeled.end());
  std::vector<CandidatePair> predicted =
      ClustersToPairs(ReadClusters((out / "clusters.csv").string()));
  std::erase_if(predicted, [&](const CandidatePair &p) {
    return !std::binary_search(labeled.begin(), labeled.end(), p);
  });
  *report = PairwiseMetrics(predicted, truth);
  return report->f1;
}

void PrepareBenchmark() {
  if (g_bench.done) return;
  fs::path dir = g_scratch / "bench";
  fs::create_directories(dir);
  SyntheticOptions o;
  o.n = 10000;
  o.dup_rate = 0.1;
  o.corruption = CorruptionProfile::kModerate;
  o.seed = 42;
  SyntheticData data = GenerateSynthetic(o);
  WriteTable(data.table, (dir / "records.csv").string(), ',', "id");
  WriteTruth(data.truth, (dir / "truth.csv").string());
  PipelineConfig c = SyntheticPipelineConfig("records.csv", "truth.csv", "out_w4");
  c.threshold = 0.5;
  c.train_ratio = 0.7;
  c.workers = 4;
  g_bench.config_path = (dir / "config.json").string();
  WriteFile(g_bench.config_path, c.ToJson());
  g_bench.out_dir = dir / "out_w4";
  g_bench.done = true;
}

Outcome EndToEnd() {
  PrepareBenchmark();
  PipelineConfig c = PipelineConfig::Load(g_bench.config_path);
  Pipeline(c).Run();
  EvaluationReport test;
  double f1 = TestSplitF1(g_bench.out_dir, &test);

  // For context: all truth pairs, including those blocking never proposed.
  std::vector<CandidatePair> all_truth = ReadPairs(c.truth);
  EvaluationReport overall = PairwiseMetrics(
      ClustersToPairs(ReadClusters((g_bench.out_dir / "clusters.csv").string())), all_truth);
  std::ostringstream d;
  d.precision(4);
  d << std::fixed << "test split F1 " << f1 << " (P " << test.precision << ", R " << test.recall
    << ", TP " << test.true_positives << ", FP " << test.false_positives << ", FN "
    << test.false_negatives << "); against all truth pairs F1 " << overall.f1;
  return {f1 >= 0.90, d.str()};
}

// ------------------------------------------------------------------ 7

// Blocking group-size cap for the million-record run. The benchmark config
// uses 1000; on this single-core machine that many candidate pairs cannot be
// featurized within the budget, so the smoke run tightens it.
constexpr size_t kScaleMaxrow = 50;

Outcome Scalability() {
  PrepareBenchmark();
  // A model from the benchmark run scores the large dataset.
  if (!fs::exists(g_bench.out_dir / "model.json")) {
    Pipeline(PipelineConfig::Load(g_bench.config_path)).RunThrough(Stage::kTrain);
  }
  fs::path dir = g_scratch / "scale";
  fs::create_directories(dir);
  SyntheticOptions o;
  o.n = 1000000;
  o.seed = 7;
  SyntheticData data = GenerateSynthetic(o);
  size_t records = data.table.num_rows();
  WriteTable(data.table, (dir / "records.csv").string(), ',', "id");
  data = SyntheticData{};

  PipelineConfig c = SyntheticPipelineConfig((dir / "records.csv").string(), "",
                                             (dir / "out").string());
  c.truth.clear();
  c.labels.clear();
  c.model = (g_bench.out_dir / "model.json").string();
  c.indexing.maxrow = kScaleMaxrow;
  c.workers = 8;
  c.chunk_size = 50000;
  const Manifest &m = Pipeline(c).RunThrough(Stage::kScore);

  nlohmann::json stats =
      nlohmann::json::parse(ReadFile((dir / "out" / "index_stats.json").string()));
  uint64_t pairs = stats.at("pairs_emitted").get<uint64_t>();
  uint64_t groups = 0;
  for (const auto &g : stats.at("groups_per_subset")) groups += g.get<uint64_t>();
  uint64_t bound = kScaleMaxrow * (kScaleMaxrow - 1) / 2 * groups;
  uint64_t scored = std::stoull(m.Find("score")->summary.at("scored"));

  std::ostringstream d;
  d << records << " records, maxrow " << kScaleMaxrow << ": " << pairs << " pairs, " << groups
    << " groups, bound " << bound << ", " << scored << " scored; stage seconds";
  for (const auto &s : m.stages) d << " " << s.name << "=" << FormatFixed(s.seconds, 1);
  return {pairs < bound && scored == pairs, d.str()};
}

// ------------------------------------------------------------------ 8

Outcome Determinism() {
  PrepareBenchmark();
  std::map<int, std::pair<std::string, std::string>> hashes;
  for (int workers : {1, 4, 8}) {
    PipelineConfig c = PipelineConfig::Load(g_bench.config_path);
    c.workers = workers;
    c.output_dir = (g_scratch / "bench" / ("out_w" + std::to_string(workers))).string();
    Pipeline(c).Run();
    fs::path out = c.output_dir;
    hashes[workers] = {Sha256File((out / "clusters.csv").string()),
                       Sha256File((out / "scores.csv").string())};
  }
  bool same = hashes[1] == hashes[4] && hashes[1] == hashes[8];
  std::ostringstream d;
  d << "clusters.csv " << hashes[1].first.substr(0, 12) << ", scores.csv "
    << hashes[1].second.substr(0, 12) << " for workers 1; workers 4 and 8 "
    << (same ? "identical" : "DIFFER");
  return {same, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"blocking oracle equivalence", BlockingOracle},
      {"list attribute expansion", ListAttributeExpansion},
      {"similarity oracle suite", SimilaritySuite},
      {"edge weight loss 3.80", EdgeWeightLossExample},
      {"disjoint-clique suite", DisjointCliqueSuite},
      {"end-to-end synthetic F1", EndToEnd},
      {"scalability smoke (1M records)", Scalability},
      {"determinism across worker counts", Determinism}};

  std::set<size_t> only;
  if (const char *env = std::getenv("ERKIT_ACCEPTANCE_ONLY")) {
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ',')) only.insert(std::stoul(item));
  }
  g_scratch = fs::temp_directory_path() / ("erkit_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(g_scratch);
  fs::create_directories(g_scratch);

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
              << criteria[i].first << ") " << FormatFixed(secs, 1) << "s: " << o.detail
              << std::endl;
  }
  if (!std::getenv("ERKIT_ACCEPTANCE_KEEP")) fs::remove_all(g_scratch);
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
