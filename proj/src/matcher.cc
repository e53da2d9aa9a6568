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

#include "erkit/matcher.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "erkit/common.h"
#include "erkit/io.h"
#include "erkit/rng.h"
#include "json.hpp"

namespace erkit {

using nlohmann::json;

bool Tree::Vote(std::span<const double> x) const {
  int32_t i = 0;
  for (;;) {
    const TreeNode &n = nodes[static_cast<size_t>(i)];
    if (n.feature < 0) return n.vote;
    double v = x[static_cast<size_t>(n.feature)];
    bool go_left = IsMissing(v) ? n.missing_left : v <= n.threshold;
    i = go_left ? n.left : n.right;
  }
}

double MatchModel::Probability(std::span<const double> x) const {
  if (trees.empty()) return 0.0;
  size_t votes = 0;
  for (const auto &t : trees) votes += t.Vote(x) ? 1 : 0;
  return static_cast<double>(votes) / static_cast<double>(trees.size());
}

namespace {

constexpr uint8_t kMissingBin = 255;

// Per-feature cut points; bin(x) = number of cuts strictly below x.
struct Binning {
  std::vector<std::vector<double>> cuts;

  uint8_t Bin(size_t f, double x) const {
    if (IsMissing(x)) return kMissingBin;
    const auto &c = cuts[f];
    return static_cast<uint8_t>(std::lower_bound(c.begin(), c.end(), x) - c.begin());
  }
};

Binning BuildBinning(const std::vector<double> &x, size_t n, size_t d, int max_bins) {
  Binning b;
  b.cuts.resize(d);
  std::vector<double> col;
  for (size_t f = 0; f < d; ++f) {
    col.clear();
    for (size_t i = 0; i < n; ++i) {
      double v = x[i * d + f];
      if (!IsMissing(v)) col.push_back(v);
    }
    std::sort(col.begin(), col.end());
    std::vector<double> distinct = col;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    auto &cuts = b.cuts[f];
    if (distinct.size() <= static_cast<size_t>(max_bins)) {
      for (size_t k = 0; k + 1 < distinct.size(); ++k) {
        cuts.push_back(distinct[k] + (distinct[k + 1] - distinct[k]) / 2);
      }
    } else {
      // Quantile cuts placed just above the sampled distinct value.
      for (int k = 1; k < max_bins; ++k) {
        double q = col[static_cast<size_t>(k) * col.size() / static_cast<size_t>(max_bins)];
        auto it = std::lower_bound(distinct.begin(), distinct.end(), q);
        if (it + 1 >= distinct.end()) continue;
        double cut = *it + (*(it + 1) - *it) / 2;
        if (cuts.empty() || cut > cuts.back()) cuts.push_back(cut);
      }
    }
  }
  return b;
}

struct TrainingData {
  size_t n = 0;
  size_t d = 0;
  std::vector<uint8_t> bins;  // n x d
  std::vector<uint8_t> y;
  const Binning *binning = nullptr;
};

class TreeBuilder {
 public:
  TreeBuilder(const TrainingData &data, const ForestParams &params, Rng rng)
      : data_(data), params_(params), rng_(rng) {
    mtry_ = params.max_features > 0
                ? static_cast<size_t>(params.max_features)
                : static_cast<size_t>(std::floor(std::sqrt(static_cast<double>(data.d))));
    mtry_ = std::clamp<size_t>(mtry_, 1, data.d);
    features_.resize(data.d);
  }

  Tree Build(std::vector<uint32_t> samples, std::vector<uint32_t> weights) {
    weights_ = std::move(weights);
    tree_.nodes.clear();
    Grow(samples, 0);
    return std::move(tree_);
  }

 private:
  struct Split {
    int32_t feature = -1;
    int bin = -1;
    bool missing_left = true;
    double score = 0;
  };

  int32_t Grow(std::vector<uint32_t> &samples, int depth) {
    uint64_t pos = 0;
    uint64_t total = 0;
    for (uint32_t s : samples) {
      total += weights_[s];
      if (data_.y[s]) pos += weights_[s];
    }
    uint64_t neg = total - pos;
    auto index = static_cast<int32_t>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    tree_.nodes.back().vote = pos > neg;

    if (depth >= params_.max_depth || pos == 0 || neg == 0 ||
        total < 2 * static_cast<uint64_t>(params_.min_leaf)) {
      return index;
    }
    Split best = FindSplit(samples, pos, neg);
    if (best.feature < 0) return index;

    std::vector<uint32_t> left;
    std::vector<uint32_t> right;
    const size_t d = data_.d;
    for (uint32_t s : samples) {
      uint8_t b = data_.bins[s * d + static_cast<size_t>(best.feature)];
      bool go_left = b == kMissingBin ? best.missing_left : b <= best.bin;
      (go_left ? left : right).push_back(s);
    }
    std::vector<uint32_t>().swap(samples);

    int32_t l = Grow(left, depth + 1);
    int32_t r = Grow(right, depth + 1);
    TreeNode &node = tree_.nodes[static_cast<size_t>(index)];
    node.feature = best.feature;
    node.threshold =
        data_.binning->cuts[static_cast<size_t>(best.feature)][static_cast<size_t>(best.bin)];
    node.left = l;
    node.right = r;
    node.missing_left = best.missing_left;
    return index;
  }

  Split FindSplit(const std::vector<uint32_t> &samples, uint64_t pos, uint64_t neg) {
    const size_t d = data_.d;
    std::iota(features_.begin(), features_.end(), 0);
    const double parent = Purity(pos, neg);
    Split best;
    best.score = parent + 1e-12;
    const auto min_leaf = static_cast<uint64_t>(params_.min_leaf);
    std::vector<uint64_t> hp;
    std::vector<uint64_t> hn;
    // Draw features lazily; past mtry, keep drawing only while no valid
    // split has been found.
    for (size_t k = 0; k < d && (k < mtry_ || best.feature < 0); ++k) {
      std::swap(features_[k], features_[k + static_cast<size_t>(rng_.Uniform(d - k))]);
      size_t f = features_[k];
      size_t nbins = data_.binning->cuts[f].size() + 1;
      if (nbins < 2) continue;
      hp.assign(nbins, 0);
      hn.assign(nbins, 0);
      uint64_t mp = 0;
      uint64_t mn = 0;
      for (uint32_t s : samples) {
        uint8_t b = data_.bins[s * d + f];
        uint64_t w = weights_[s];
        if (b == kMissingBin) {
          (data_.y[s] ? mp : mn) += w;
        } else {
          (data_.y[s] ? hp[b] : hn[b]) += w;
        }
      }
      uint64_t lp = 0;
      uint64_t ln = 0;
      const uint64_t present_p = pos - mp;
      const uint64_t present_n = neg - mn;
      for (size_t b = 0; b + 1 < nbins; ++b) {
        lp += hp[b];
        ln += hn[b];
        uint64_t rp = present_p - lp;
        uint64_t rn = present_n - ln;
        // Missing values follow the heavier side.
        bool missing_left = lp + ln >= rp + rn;
        uint64_t Lp = lp + (missing_left ? mp : 0);
        uint64_t Ln = ln + (missing_left ? mn : 0);
        uint64_t Rp = rp + (missing_left ? 0 : mp);
        uint64_t Rn = rn + (missing_left ? 0 : mn);
        if (Lp + Ln < min_leaf || Rp + Rn < min_leaf) continue;
        double score = Purity(Lp, Ln) + Purity(Rp, Rn);
        if (score > best.score) {
          best.score = score;
          best.feature = static_cast<int32_t>(f);
          best.bin = static_cast<int>(b);
          best.missing_left = missing_left;
        }
      }
    }
    return best;
  }

  // Sum of squared class weights over node weight; maximizing the sum over
  // children minimizes weighted Gini impurity.
  static double Purity(uint64_t p, uint64_t n) {
    if (p + n == 0) return 0;
    double dp = static_cast<double>(p);
    double dn = static_cast<double>(n);
    return (dp * dp + dn * dn) / (dp + dn);
  }

  const TrainingData &data_;
  const ForestParams &params_;
  Rng rng_;
  size_t mtry_ = 1;
  std::vector<size_t> features_;
  std::vector<uint32_t> weights_;
  Tree tree_;
};

uint64_t PairKey(const CandidatePair &p) {
  return static_cast<uint64_t>(p.id_a) * 0x9e3779b97f4a7c15ULL ^
         static_cast<uint64_t>(p.id_b);
}

void ValidateParams(const ForestParams &p) {
  if (p.n_trees < 1) throw UsageError("matcher: n_trees must be >= 1");
  if (p.max_depth < 1) throw UsageError("matcher: max_depth must be >= 1");
  if (p.min_leaf < 1) throw UsageError("matcher: min_leaf must be >= 1");
  if (p.max_features < 0) throw UsageError("matcher: max_features must be >= 0");
  if (p.max_bins < 2 || p.max_bins > 254) {
    throw UsageError("matcher: max_bins must be in [2, 254]");
  }
}

}  // namespace

MatchModel Train(const FeatureMatrix &vectors, std::span<const LabeledPair> labels,
                 const ForestParams &params, int workers) {
  ValidateParams(params);
  const size_t d = vectors.cols();
  if (d == 0) throw UsageError("train: feature matrix has no features");
  {
    std::vector<std::string> sorted = vectors.names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw UsageError("train: feature-name mismatch (duplicate feature names)");
    }
  }
  size_t positives = 0;
  for (const auto &l : labels) positives += l.match ? 1 : 0;
  if (positives == 0 || positives == labels.size()) {
    throw UsageError("single-class training set");
  }

  std::unordered_multimap<uint64_t, size_t> row_of;
  row_of.reserve(vectors.rows());
  for (size_t i = 0; i < vectors.rows(); ++i) row_of.emplace(PairKey(vectors.pairs[i]), i);
  auto find_row = [&](const CandidatePair &p) -> size_t {
    auto [b, e] = row_of.equal_range(PairKey(p));
    for (auto it = b; it != e; ++it) {
      if (vectors.pairs[it->second] == p) return it->second;
    }
    throw UsageError("train: labeled pair (" + std::to_string(p.id_a) + "," +
                     std::to_string(p.id_b) + ") not present in the feature matrix");
  };

  // Canonical sample order so the model does not depend on label file order.
  std::vector<LabeledPair> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end(), [](const LabeledPair &a, const LabeledPair &b) {
    return a.pair < b.pair;
  });
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].pair == sorted[i - 1].pair) {
      throw UsageError("train: pair (" + std::to_string(sorted[i].pair.id_a) + "," +
                       std::to_string(sorted[i].pair.id_b) + ") labeled twice");
    }
  }

  const size_t n = sorted.size();
  std::vector<double> x(n * d);
  std::vector<uint8_t> y(n);
  std::string hash_input;
  for (size_t i = 0; i < n; ++i) {
    size_t row = find_row(sorted[i].pair);
    auto src = vectors.row(row);
    std::copy(src.begin(), src.end(), x.begin() + static_cast<long>(i * d));
    y[i] = sorted[i].match ? 1 : 0;
    hash_input += std::to_string(sorted[i].pair.id_a) + "," +
                  std::to_string(sorted[i].pair.id_b) + "," + (y[i] ? "1" : "0");
    for (double v : src) {
      hash_input.push_back(',');
      if (!IsMissing(v)) hash_input += FormatDouble(v);
    }
    hash_input.push_back('\n');
  }

  Binning binning = BuildBinning(x, n, d, params.max_bins);
  TrainingData data;
  data.n = n;
  data.d = d;
  data.y = y;
  data.binning = &binning;
  data.bins.resize(n * d);
  for (size_t i = 0; i < n; ++i) {
    for (size_t f = 0; f < d; ++f) data.bins[i * d + f] = binning.Bin(f, x[i * d + f]);
  }

  MatchModel model;
  model.params = params;
  model.feature_names = vectors.names;
  model.dataset_hash = Sha256Hex(hash_input);
  model.n_samples = n;
  model.n_positive = positives;
  model.trees.resize(static_cast<size_t>(params.n_trees));
  // Per tree: out-of-bag sample indices and the tree's votes on them.
  std::vector<std::vector<std::pair<uint32_t, bool>>> oob(model.trees.size());

  ParallelEach(model.trees.size(), workers, [&](size_t t) {
    Rng rng = Rng::Derive(params.seed, t);
    std::vector<uint32_t> counts(n, 0);
    for (size_t k = 0; k < n; ++k) ++counts[rng.Uniform(n)];
    std::vector<uint32_t> samples;
    for (size_t i = 0; i < n; ++i) {
      if (counts[i] > 0) samples.push_back(static_cast<uint32_t>(i));
    }
    TreeBuilder builder(data, params, rng);
    model.trees[t] = builder.Build(std::move(samples), counts);
    for (size_t i = 0; i < n; ++i) {
      if (counts[i] != 0) continue;
      bool vote = model.trees[t].Vote(std::span<const double>(x.data() + i * d, d));
      oob[t].emplace_back(static_cast<uint32_t>(i), vote);
    }
  });

  std::vector<uint32_t> votes(n, 0);
  std::vector<uint32_t> seen(n, 0);
  for (const auto &tree_oob : oob) {
    for (const auto &[i, vote] : tree_oob) {
      ++seen[i];
      votes[i] += vote ? 1 : 0;
    }
  }
  size_t evaluated = 0;
  size_t correct = 0;
  for (size_t i = 0; i < n; ++i) {
    if (seen[i] == 0) continue;
    ++evaluated;
    bool predicted = 2 * votes[i] > seen[i];
    if (predicted == static_cast<bool>(y[i])) ++correct;
  }
  model.oob_accuracy =
      evaluated == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(evaluated);
  return model;
}

std::vector<ScoredPair> PredictProba(const MatchModel &model, const FeatureMatrix &vectors,
                                     int workers) {
  if (vectors.cols() != model.feature_names.size()) {
    throw UsageError("score: feature layout mismatch (model has " +
                     std::to_string(model.feature_names.size()) + " features, matrix has " +
                     std::to_string(vectors.cols()) + ")");
  }
  for (size_t i = 0; i < vectors.cols(); ++i) {
    if (vectors.names[i] != model.feature_names[i]) {
      throw UsageError("score: feature layout mismatch at column " + std::to_string(i) +
                       ": model '" + model.feature_names[i] + "', matrix '" +
                       vectors.names[i] + "'");
    }
  }
  std::vector<ScoredPair> out(vectors.rows());
  ParallelFor(vectors.rows(), workers, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      out[i] = {vectors.pairs[i].id_a, vectors.pairs[i].id_b,
                model.Probability(vectors.row(i))};
    }
  });
  return out;
}

std::vector<ScoredPair> ApplyThreshold(std::span<const ScoredPair> scores, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw UsageError("threshold must be within [0, 1], got " + FormatDouble(t));
  }
  std::vector<ScoredPair> out;
  for (const auto &s : scores) {
    if (s.probability >= t) out.push_back(s);
  }
  return out;
}

std::pair<std::vector<LabeledPair>, std::vector<LabeledPair>> SplitTrainTest(
    std::span<const LabeledPair> labeled, double ratio, uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw UsageError("split ratio must be in (0, 1)");
  }
  std::vector<LabeledPair> strata[2];
  for (const auto &l : labeled) strata[l.match ? 1 : 0].push_back(l);
  double quota[2];
  size_t take[2];
  for (int c = 0; c < 2; ++c) {
    if (strata[c].size() < 2) {
      throw UsageError(std::string("split: the ") + (c ? "match" : "non-match") +
                       " stratum has fewer than 2 members");
    }
    quota[c] = ratio * static_cast<double>(strata[c].size());
    take[c] = static_cast<size_t>(std::floor(quota[c]));
  }
  auto target = static_cast<size_t>(std::llround(ratio * static_cast<double>(labeled.size())));
  size_t assigned = take[0] + take[1];
  // Largest remainder; ties go to the non-match stratum first.
  while (assigned < target) {
    int c = (quota[1] - static_cast<double>(take[1])) > (quota[0] - static_cast<double>(take[0]))
                ? 1
                : 0;
    if (take[c] >= strata[c].size()) c = 1 - c;
    ++take[c];
    quota[c] = static_cast<double>(take[c]);
    ++assigned;
  }
  std::pair<std::vector<LabeledPair>, std::vector<LabeledPair>> out;
  for (int c = 0; c < 2; ++c) {
    auto &s = strata[c];
    if (s.empty()) continue;
    take[c] = std::clamp<size_t>(take[c], 1, s.size() - 1);
    std::sort(s.begin(), s.end(),
              [](const LabeledPair &a, const LabeledPair &b) { return a.pair < b.pair; });
    Rng rng = Rng::Derive(seed, static_cast<uint64_t>(c));
    rng.Shuffle(s);
    out.first.insert(out.first.end(), s.begin(), s.begin() + static_cast<long>(take[c]));
    out.second.insert(out.second.end(), s.begin() + static_cast<long>(take[c]), s.end());
  }
  auto by_pair = [](const LabeledPair &a, const LabeledPair &b) { return a.pair < b.pair; };
  std::sort(out.first.begin(), out.first.end(), by_pair);
  std::sort(out.second.begin(), out.second.end(), by_pair);
  return out;
}

void WriteLabels(std::span<const LabeledPair> labels, const std::string &path) {
  CsvWriter out(path);
  out.WriteRaw("id_a,id_b,label");
  for (const auto &l : labels) {
    out.WriteRaw(std::to_string(l.pair.id_a) + "," + std::to_string(l.pair.id_b) + "," +
                 (l.match ? "1" : "0"));
  }
  out.Close();
}

std::vector<LabeledPair> ReadLabels(const std::string &path) {
  CsvReader in(path);
  std::vector<std::string> fields;
  if (!in.Next(fields) || fields.size() != 3) {
    throw UsageError(path + ": expected header id_a,id_b,label");
  }
  std::vector<LabeledPair> out;
  while (in.Next(fields)) {
    if (fields.size() != 3) throw UsageError(path + ":" + std::to_string(in.line()) +
                                             ": expected 3 fields");
    auto a = ParseInt(fields[0]);
    auto b = ParseInt(fields[1]);
    std::string label = Trim(fields[2]);
    if (!a || !b || (label != "0" && label != "1")) {
      throw UsageError(path + ":" + std::to_string(in.line()) + ": invalid label row");
    }
    out.push_back({{*a, *b}, label == "1"});
  }
  return out;
}

ScoreWriter::ScoreWriter(const std::string &path) : out_(path) {
  out_.WriteRaw("id_a,id_b,probability");
}

void ScoreWriter::Append(std::span<const ScoredPair> scores) {
  std::string line;
  for (const auto &s : scores) {
    line = std::to_string(s.id_a);
    line.push_back(',');
    line += std::to_string(s.id_b);
    line.push_back(',');
    line += FormatFixed(s.probability, 6);
    out_.WriteRaw(line);
  }
}

void ScoreWriter::Close() { out_.Close(); }

void WriteScores(std::span<const ScoredPair> scores, const std::string &path) {
  ScoreWriter out(path);
  out.Append(scores);
  out.Close();
}

std::vector<ScoredPair> ReadScores(const std::string &path) {
  CsvReader in(path);
  std::vector<std::string> fields;
  if (!in.Next(fields) || fields.size() != 3) {
    throw UsageError(path + ": expected header id_a,id_b,probability");
  }
  std::vector<ScoredPair> out;
  while (in.Next(fields)) {
    auto bad = [&] {
      return UsageError(path + ":" + std::to_string(in.line()) + ": invalid score row");
    };
    if (fields.size() != 3) throw bad();
    auto a = ParseInt(fields[0]);
    auto b = ParseInt(fields[1]);
    double p = ParseDouble(fields[2]).value_or(-1.0);
    if (!a || !b || !(p >= 0 && p <= 1)) throw bad();
    out.push_back({*a, *b, p});
  }
  return out;
}

std::string MatchModel::ToJson() const {
  nlohmann::ordered_json j;
  j["format"] = "erkit-match-model";
  j["version"] = kFormatVersion;
  j["algorithm"] = algorithm;
  j["hyperparameters"] = {{"n_trees", params.n_trees},
                          {"max_depth", params.max_depth},
                          {"min_leaf", params.min_leaf},
                          {"max_features", params.max_features},
                          {"max_bins", params.max_bins},
                          {"seed", params.seed}};
  j["feature_names"] = feature_names;
  j["missing_policy"] = missing_policy;
  j["training"] = {{"dataset_hash", dataset_hash},
                   {"n_samples", n_samples},
                   {"n_positive", n_positive},
                   {"oob_accuracy", oob_accuracy}};
  auto jt = nlohmann::ordered_json::array();
  for (const auto &t : trees) {
    auto nodes = nlohmann::ordered_json::array();
    for (const auto &n : t.nodes) {
      if (n.feature < 0) {
        nodes.push_back({-1, n.vote ? 1 : 0});
      } else {
        nodes.push_back({n.feature, n.threshold, n.left, n.right, n.missing_left ? 1 : 0});
      }
    }
    jt.push_back(std::move(nodes));
  }
  j["trees"] = std::move(jt);
  return j.dump() + "\n";
}

MatchModel MatchModel::FromJson(const std::string &text) {
  MatchModel m;
  try {
    json j = json::parse(text);
    if (j.at("format") != "erkit-match-model") throw UsageError("not a match model file");
    if (j.at("version").get<int>() != kFormatVersion) {
      throw UsageError("unsupported model version " + j.at("version").dump());
    }
    m.algorithm = j.at("algorithm").get<std::string>();
    if (m.algorithm != "random_forest") {
      throw UsageError("unsupported model algorithm '" + m.algorithm + "'");
    }
    const auto &h = j.at("hyperparameters");
    m.params.n_trees = h.at("n_trees").get<int>();
    m.params.max_depth = h.at("max_depth").get<int>();
    m.params.min_leaf = h.at("min_leaf").get<int>();
    m.params.max_features = h.at("max_features").get<int>();
    m.params.max_bins = h.at("max_bins").get<int>();
    m.params.seed = h.at("seed").get<uint64_t>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.missing_policy = j.at("missing_policy").get<std::string>();
    const auto &tr = j.at("training");
    m.dataset_hash = tr.at("dataset_hash").get<std::string>();
    m.n_samples = tr.at("n_samples").get<uint64_t>();
    m.n_positive = tr.at("n_positive").get<uint64_t>();
    m.oob_accuracy = tr.at("oob_accuracy").get<double>();
    for (const auto &jt : j.at("trees")) {
      Tree t;
      for (const auto &jn : jt) {
        TreeNode n;
        n.feature = jn.at(0).get<int32_t>();
        if (n.feature < 0) {
          n.vote = jn.at(1).get<int>() != 0;
        } else {
          n.threshold = jn.at(1).get<double>();
          n.left = jn.at(2).get<int32_t>();
          n.right = jn.at(3).get<int32_t>();
          n.missing_left = jn.at(4).get<int>() != 0;
          if (static_cast<size_t>(n.feature) >= m.feature_names.size()) {
            throw UsageError("model node references feature " + std::to_string(n.feature));
          }
        }
        t.nodes.push_back(n);
      }
      for (const auto &n : t.nodes) {
        if (n.feature < 0) continue;
        auto size = static_cast<int32_t>(t.nodes.size());
        if (n.left <= 0 || n.left >= size || n.right <= 0 || n.right >= size) {
          throw UsageError("model tree has an out-of-range child index");
        }
      }
      if (t.nodes.empty()) throw UsageError("model contains an empty tree");
      m.trees.push_back(std::move(t));
    }
  } catch (const json::exception &e) {
    throw UsageError(std::string("malformed model file: ") + e.what());
  }
  return m;
}

void MatchModel::Save(const std::string &path) const { WriteFile(path, ToJson()); }

MatchModel MatchModel::Load(const std::string &path) { return FromJson(ReadFile(path)); }

}  // namespace erkit
