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

// Command-line front end. Exit codes: 0 success, 1 usage or configuration
// error, 2 stage failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "erkit/clustering.h"
#include "erkit/config.h"
#include "erkit/evaluation.h"
#include "erkit/io.h"
#include "erkit/matcher.h"
#include "erkit/pipeline.h"
#include "erkit/synthetic.h"

namespace fs = std::filesystem;

namespace {

struct Globals {
  std::string config;
  std::optional<int> workers;
  std::optional<uint64_t> seed;
  bool force = false;
  std::string out;
};

erkit::PipelineConfig LoadConfig(const Globals &g) {
  if (g.config.empty()) throw erkit::UsageError("--config is required for this command");
  erkit::PipelineConfig c = erkit::PipelineConfig::Load(g.config);
  if (g.workers) c.workers = *g.workers;
  if (g.seed) c.matcher.seed = *g.seed;
  if (!g.out.empty()) c.output_dir = g.out;
  c.Validate();
  return c;
}

void RunStages(const Globals &g, std::optional<erkit::Stage> last) {
  erkit::RunOptions options;
  options.force = g.force;
  options.log = &std::cerr;
  erkit::Pipeline pipeline(LoadConfig(g), options);
  if (last) {
    pipeline.RunThrough(*last);
  } else {
    pipeline.Run();
  }
  std::cout << pipeline.Path("manifest.json") << "\n";
}

// Pairs predicted by a file: clusters.csv expands to within-cluster pairs,
// a score or match file contributes every listed pair.
std::vector<erkit::CandidatePair> PredictedPairs(const std::string &path) {
  erkit::CsvReader probe(path);
  std::vector<std::string> header;
  if (!probe.Next(header)) throw erkit::UsageError(path + ": empty file");
  if (!header.empty() && header[0] == "record_id") {
    return erkit::ClustersToPairs(erkit::ReadClusters(path));
  }
  if (header.size() == 3 && header[2] == "probability") {
    std::vector<erkit::CandidatePair> out;
    for (const auto &s : erkit::ReadScores(path)) out.push_back({s.id_a, s.id_b});
    return out;
  }
  return erkit::ReadPairs(path);
}

struct EvaluateArgs {
  std::string predicted;
  std::string truth;
  std::string labels;
  std::string output;
};

void Evaluate(const Globals &g, EvaluateArgs a) {
  erkit::Mode mode = erkit::Mode::kDedup;
  if (!g.config.empty()) {
    erkit::PipelineConfig c = LoadConfig(g);
    mode = c.mode;
    fs::path out = c.output_dir;
    if (a.predicted.empty()) {
      a.predicted = (out / (mode == erkit::Mode::kDedup ? "clusters.csv" : "matches.csv")).string();
    }
    if (a.labels.empty() && a.truth.empty()) {
      if (fs::exists(out / "labels_test.csv")) {
        a.labels = (out / "labels_test.csv").string();
      } else {
        a.truth = c.truth;
      }
    }
  }
  if (a.predicted.empty()) throw erkit::UsageError("evaluate: --predicted is required");
  if (a.truth.empty() == a.labels.empty()) {
    throw erkit::UsageError("evaluate: give exactly one of --truth, --labels");
  }
  std::vector<erkit::CandidatePair> predicted = PredictedPairs(a.predicted);
  std::vector<erkit::CandidatePair> truth;
  if (!a.labels.empty()) {
    // Restrict both sides to the labeled pairs; positives are the truth.
    std::vector<erkit::LabeledPair> labels = erkit::ReadLabels(a.labels);
    std::vector<erkit::CandidatePair> labeled;
    for (const auto &l : labels) {
      labeled.push_back(l.pair);
      if (l.match) truth.push_back(l.pair);
    }
    std::sort(labeled.begin(), labeled.end());
    std::erase_if(predicted, [&](const erkit::CandidatePair &p) {
      return !std::binary_search(labeled.begin(), labeled.end(), p);
    });
  } else {
    truth = erkit::ReadPairs(a.truth);
  }
  erkit::EvaluationReport report = erkit::PairwiseMetrics(predicted, truth, mode);
  std::string json = report.ToJson();
  if (!a.output.empty()) erkit::WriteFile(a.output, json);
  std::cout << json;
}

struct SynthArgs {
  size_t n = 1000;
  double dup_rate = 0.1;
  std::string corruption = "moderate";
};

void Synth(const Globals &g, const SynthArgs &a) {
  erkit::SyntheticOptions o;
  o.n = a.n;
  o.dup_rate = a.dup_rate;
  o.corruption = erkit::ParseCorruptionProfile(a.corruption);
  o.seed = g.seed.value_or(42);
  fs::path dir = g.out.empty() ? fs::path("synthetic") : fs::path(g.out);
  fs::create_directories(dir);
  erkit::SyntheticData data = erkit::GenerateSynthetic(o);
  erkit::WriteTable(data.table, (dir / "records.csv").string(), ',', "id");
  erkit::WriteTruth(data.truth, (dir / "truth.csv").string());
  // Paths in the starter config are relative to its own directory.
  erkit::PipelineConfig c = erkit::SyntheticPipelineConfig("records.csv", "truth.csv", "out");
  erkit::WriteFile((dir / "config.json").string(), c.ToJson());
  std::cout << "wrote " << data.table.num_rows() << " records and " << data.truth.size()
            << " truth pairs to " << dir.string() << "\n";
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"erkit: batch entity resolution (deduplication and record linkage)"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Pipeline config (JSON)");
  app.add_option("--workers", g.workers, "Worker threads (0 = all cores)");
  app.add_option("--seed", g.seed, "Seed for training, splitting and synthesis");
  app.add_flag("--force", g.force, "Rerun stages even when up to date");
  app.add_option("--out", g.out, "Output directory");

  std::optional<erkit::Stage> target;
  bool run_pipeline = false;
  const std::pair<const char *, erkit::Stage> stage_commands[] = {
      {"profile", erkit::Stage::kProfile}, {"clean", erkit::Stage::kClean},
      {"encode", erkit::Stage::kEncode},   {"index", erkit::Stage::kIndex},
      {"featurize", erkit::Stage::kFeaturize},
      {"train", erkit::Stage::kTrain},     {"score", erkit::Stage::kScore},
      {"cluster", erkit::Stage::kCluster}};
  for (const auto &[name, stage] : stage_commands) {
    auto *sub = app.add_subcommand(name, std::string("Run the pipeline through ") + name);
    sub->fallthrough();
    erkit::Stage s = stage;
    sub->callback([&, s] {
      target = s;
      run_pipeline = true;
    });
  }
  auto *run = app.add_subcommand("run", "Run every stage");
  run->fallthrough();
  run->callback([&] { run_pipeline = true; });

  EvaluateArgs eval_args;
  auto *evaluate = app.add_subcommand("evaluate", "Pairwise precision, recall and F1");
  evaluate->fallthrough();
  evaluate->add_option("--predicted", eval_args.predicted,
                       "clusters.csv, a score/match file or a pair file");
  evaluate->add_option("--truth", eval_args.truth, "Truth pair file");
  evaluate->add_option("--labels", eval_args.labels,
                       "Labeled pairs; restricts evaluation to these pairs");
  evaluate->add_option("--output", eval_args.output, "Write the report here as well");

  SynthArgs synth_args;
  auto *synth = app.add_subcommand("synth", "Generate a synthetic dataset with known duplicates");
  synth->fallthrough();
  synth->add_option("--n", synth_args.n, "Base records")->capture_default_str();
  synth->add_option("--dup-rate", synth_args.dup_rate, "Duplicates per base record")
      ->capture_default_str();
  synth->add_option("--corruption", synth_args.corruption, "light, moderate or heavy")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_pipeline) {
      RunStages(g, target);
    } else if (evaluate->parsed()) {
      Evaluate(g, eval_args);
    } else if (synth->parsed()) {
      Synth(g, synth_args);
    }
  } catch (const erkit::UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
