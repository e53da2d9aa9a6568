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

#ifndef ERKIT_FEATURES_H_
#define ERKIT_FEATURES_H_

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "erkit/indexing.h"
#include "erkit/io.h"
#include "erkit/schema.h"
#include "erkit/similarity.h"
#include "erkit/table.h"

namespace erkit {

// Missing-value marker: either side of the pair has no value.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool IsMissing(double v) { return std::isnan(v); }

struct FeatureDef {
  std::string attribute;
  Measure measure = Measure::kExactMatch;
  std::optional<Tokenizer> tokenizer;  // token measures only
  std::string name;                    // "attribute__measure[_tokenizer]"
};

struct FeatureOptions {
  // Tokenizers applied with every token measure on text attributes.
  std::vector<Tokenizer> tokenizers = {Tokenizer{Tokenizer::Kind::kQgram, 3}};
  // Optional per-attribute restriction, by measure suffix
  // (e.g. "jaro_winkler", "jaccard_qgram3").
  std::map<std::string, std::vector<std::string>> measures;
};

struct FeatureSpec {
  std::vector<FeatureDef> defs;

  size_t size() const { return defs.size(); }
  std::vector<std::string> Names() const;

  // Text attributes get every string measure then every token measure per
  // tokenizer; numeric and boolean attributes get exact_match and
  // absolute_norm. Order follows the schema.
  static FeatureSpec Derive(const AttributeSchema &schema,
                            const FeatureOptions &options = {});
};

struct FeatureVector {
  CandidatePair pair;
  std::vector<double> values;
};

// Row-major pair x feature matrix.
struct FeatureMatrix {
  std::vector<std::string> names;
  std::vector<CandidatePair> pairs;
  std::vector<double> values;

  size_t rows() const { return pairs.size(); }
  size_t cols() const { return names.size(); }
  std::span<const double> row(size_t i) const {
    return {values.data() + i * cols(), cols()};
  }
};

// Computes feature vectors for pairs drawn from a left and a right table
// (the same table in dedup mode). List attributes score the best value
// combination.
class Featurizer {
 public:
  Featurizer(const AttributeSchema &schema, const FeatureSpec &spec, const Table &left,
             const Table &right);

  const FeatureSpec &spec() const { return spec_; }

  // Writes spec().size() values into out. Throws on unknown record ids.
  void Compute(const CandidatePair &pair, std::span<double> out) const;

  FeatureMatrix ComputeAll(std::span<const CandidatePair> pairs, int workers = 1) const;

 private:
  struct AttributePlan {
    DataType type;
    std::vector<int> left_columns;
    std::vector<int> right_columns;
    // Feature slots belonging to this attribute.
    std::vector<size_t> slots;
  };

  size_t RowOf(const std::unordered_map<int64_t, uint32_t> &index, int64_t id,
               const char *side) const;

  FeatureSpec spec_;
  const Table &left_;
  const Table &right_;
  std::vector<AttributePlan> plans_;
  std::unordered_map<int64_t, uint32_t> left_rows_;
  std::unordered_map<int64_t, uint32_t> right_rows_;
};

FeatureVector BuildFeatureVector(const CandidatePair &pair, const Table &left,
                                 const Table &right, const AttributeSchema &schema,
                                 const FeatureSpec &spec);

// Header "id_a,id_b,<feature names>"; missing values are empty fields.
class FeatureMatrixWriter {
 public:
  FeatureMatrixWriter(const std::string &path, const std::vector<std::string> &names);
  void Append(const FeatureMatrix &chunk);
  void Close();

 private:
  CsvWriter out_;
  size_t cols_;
};

// Reads a feature file in row chunks so large files need not fit in memory.
class FeatureMatrixReader {
 public:
  explicit FeatureMatrixReader(const std::string &path);
  const std::vector<std::string> &names() const { return names_; }
  // Replaces chunk with up to max_rows rows; false once the file is exhausted.
  bool Next(FeatureMatrix &chunk, size_t max_rows);

 private:
  std::string path_;
  CsvReader in_;
  std::vector<std::string> names_;
  std::vector<std::string> fields_;
};

void WriteFeatureMatrix(const FeatureMatrix &matrix, const std::string &path);
FeatureMatrix ReadFeatureMatrix(const std::string &path);

// Header line of a feature file: identical for identical specs.
std::string FeatureHeader(const std::vector<std::string> &names);

}  // namespace erkit

#endif  // ERKIT_FEATURES_H_
