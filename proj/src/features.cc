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

#include "erkit/features.h"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "erkit/common.h"

namespace erkit {

namespace {

constexpr Measure kStringMeasures[] = {
    Measure::kLevenshtein,     Measure::kJaro,          Measure::kJaroWinkler,
    Measure::kExactMatch,      Measure::kNeedlemanWunsch, Measure::kSmithWaterman,
    Measure::kMongeElkan,
};
constexpr Measure kTokenMeasures[] = {
    Measure::kOverlapCoefficient, Measure::kDice, Measure::kCosine, Measure::kJaccard};
constexpr Measure kNumericMeasures[] = {Measure::kExactMatch, Measure::kAbsoluteNorm};

std::string MeasureSuffix(Measure m, const std::optional<Tokenizer> &tok) {
  std::string s = MeasureName(m);
  if (tok) s += "_" + tok->Name();
  return s;
}

}  // namespace

std::vector<std::string> FeatureSpec::Names() const {
  std::vector<std::string> out;
  out.reserve(defs.size());
  for (const auto &d : defs) out.push_back(d.name);
  return out;
}

FeatureSpec FeatureSpec::Derive(const AttributeSchema &schema,
                                const FeatureOptions &options) {
  for (const auto &[attr, measures] : options.measures) {
    if (schema.Find(attr) == nullptr) {
      throw UsageError("feature override for unknown attribute '" + attr + "'");
    }
  }
  FeatureSpec spec;
  for (const auto &attr : schema.attributes) {
    std::vector<FeatureDef> defs;
    auto add = [&](Measure m, std::optional<Tokenizer> tok) {
      FeatureDef d;
      d.attribute = attr.name;
      d.measure = m;
      d.tokenizer = tok;
      d.name = attr.name + "__" + MeasureSuffix(m, tok);
      defs.push_back(std::move(d));
    };
    if (attr.type == DataType::kText) {
      for (Measure m : kStringMeasures) add(m, std::nullopt);
      for (Measure m : kTokenMeasures) {
        for (const auto &tok : options.tokenizers) add(m, tok);
      }
    } else {
      for (Measure m : kNumericMeasures) add(m, std::nullopt);
    }
    auto it = options.measures.find(attr.name);
    if (it != options.measures.end()) {
      std::vector<FeatureDef> kept;
      for (const auto &wanted : it->second) {
        auto match = std::find_if(defs.begin(), defs.end(), [&](const FeatureDef &d) {
          return d.name == attr.name + "__" + wanted;
        });
        if (match == defs.end()) {
          throw UsageError("feature override: attribute '" + attr.name +
                           "' has no measure '" + wanted + "'");
        }
        kept.push_back(*match);
      }
      // Keep the canonical order regardless of override order.
      std::vector<FeatureDef> ordered;
      for (const auto &d : defs) {
        if (std::any_of(kept.begin(), kept.end(),
                        [&](const FeatureDef &k) { return k.name == d.name; })) {
          ordered.push_back(d);
        }
      }
      defs = std::move(ordered);
    }
    for (auto &d : defs) spec.defs.push_back(std::move(d));
  }
  return spec;
}

namespace {

// Token identity for set comparisons. Up to three code points pack exactly
// into 63 bits; longer tokens use a 64-bit FNV-1a hash.
uint64_t TokenKey(std::u32string_view token) {
  if (token.size() <= 3) {
    uint64_t key = token.size();
    for (char32_t c : token) key = (key << 21) | (static_cast<uint64_t>(c) & 0x1fffff);
    return key;
  }
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char32_t c : token) {
    h ^= static_cast<uint64_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h | (uint64_t{1} << 63);
}

bool IsSpace(char32_t c) { return c < 128 && std::isspace(static_cast<int>(c)); }

std::vector<std::u32string> Words(const std::u32string &s) {
  std::vector<std::u32string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(s[i])) ++i;
    size_t start = i;
    while (i < s.size() && !IsSpace(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::vector<uint64_t> TokenSet(const std::u32string &s,
                               const std::vector<std::u32string> &words,
                               const Tokenizer &tok) {
  std::vector<uint64_t> keys;
  if (tok.kind == Tokenizer::Kind::kWhitespace) {
    for (const auto &w : words) keys.push_back(TokenKey(w));
  } else if (!s.empty()) {
    auto q = static_cast<size_t>(tok.q);
    std::u32string padded(q - 1, kQgramPad);
    padded += s;
    padded.append(q - 1, kQgramPad);
    std::u32string_view view(padded);
    for (size_t i = 0; i + q <= padded.size(); ++i) keys.push_back(TokenKey(view.substr(i, q)));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

struct PreparedText {
  const std::string *raw;
  std::u32string chars;
  std::vector<std::u32string> words;
  std::vector<std::vector<uint64_t>> token_sets;  // per tokenizer slot
};

double AlignmentScale(size_t a, size_t b) {
  return static_cast<double>(std::max<size_t>({a, b, 1}));
}

}  // namespace

Featurizer::Featurizer(const AttributeSchema &schema, const FeatureSpec &spec,
                       const Table &left, const Table &right)
    : spec_(spec), left_(left), right_(right) {
  std::map<std::string, size_t> plan_index;
  for (size_t slot = 0; slot < spec_.defs.size(); ++slot) {
    const FeatureDef &def = spec_.defs[slot];
    auto it = plan_index.find(def.attribute);
    if (it == plan_index.end()) {
      const Attribute &attr = schema.Get(def.attribute);
      AttributePlan plan;
      plan.type = attr.type;
      for (const auto &c : attr.columns) {
        int li = left.FindColumn(c);
        int ri = right.FindColumn(c);
        if (li < 0 || ri < 0) {
          throw UsageError("featurize: column '" + c + "' of attribute '" + attr.name +
                           "' missing from input");
        }
        plan.left_columns.push_back(li);
        plan.right_columns.push_back(ri);
      }
      it = plan_index.emplace(def.attribute, plans_.size()).first;
      plans_.push_back(std::move(plan));
    }
    AttributePlan &plan = plans_[it->second];
    bool numeric_measure = def.measure == Measure::kAbsoluteNorm;
    if (plan.type != DataType::kText && !IsNumericMeasure(def.measure)) {
      throw UsageError("feature '" + def.name + "' is not defined for " +
                       DataTypeName(plan.type) + " attributes");
    }
    if (plan.type == DataType::kText && numeric_measure) {
      throw UsageError("feature '" + def.name + "' is not defined for text attributes");
    }
    if (IsTokenMeasure(def.measure) && !def.tokenizer) {
      throw UsageError("feature '" + def.name + "' needs a tokenizer");
    }
    plan.slots.push_back(slot);
  }
  left_rows_.reserve(left.num_rows());
  for (size_t r = 0; r < left.num_rows(); ++r) {
    left_rows_.emplace(left.row_ids[r], static_cast<uint32_t>(r));
  }
  right_rows_.reserve(right.num_rows());
  for (size_t r = 0; r < right.num_rows(); ++r) {
    right_rows_.emplace(right.row_ids[r], static_cast<uint32_t>(r));
  }
}

size_t Featurizer::RowOf(const std::unordered_map<int64_t, uint32_t> &index, int64_t id,
                         const char *side) const {
  auto it = index.find(id);
  if (it == index.end()) {
    throw UsageError(std::string("featurize: unknown ") + side + " record id " +
                     std::to_string(id));
  }
  return it->second;
}

void Featurizer::Compute(const CandidatePair &pair, std::span<double> out) const {
  if (out.size() != spec_.defs.size()) {
    throw UsageError("featurize: output span has wrong size");
  }
  size_t ra = RowOf(left_rows_, pair.id_a, "left");
  size_t rb = RowOf(right_rows_, pair.id_b, "right");

  for (const auto &plan : plans_) {
    auto va = AttributeValues(left_, plan.left_columns, ra);
    auto vb = AttributeValues(right_, plan.right_columns, rb);
    if (va.empty() || vb.empty()) {
      for (size_t slot : plan.slots) out[slot] = kMissing;
      continue;
    }
    for (size_t slot : plan.slots) out[slot] = -std::numeric_limits<double>::infinity();

    if (plan.type != DataType::kText) {
      auto to_number = [&](const std::string &s) {
        if (plan.type == DataType::kBoolean) return s == "true" ? 1.0 : 0.0;
        auto v = ParseDouble(s);
        if (!v) throw Error("featurize: non-numeric cell '" + s + "'");
        return *v;
      };
      for (const std::string *a : va) {
        for (const std::string *b : vb) {
          double x = to_number(*a);
          double y = to_number(*b);
          for (size_t slot : plan.slots) {
            out[slot] = std::max(out[slot], NumericSimilarity(x, y, spec_.defs[slot].measure));
          }
        }
      }
      continue;
    }

    // Tokenizers used by this attribute, and whether word splitting is needed.
    std::vector<Tokenizer> toks;
    std::vector<size_t> slot_tok(spec_.defs.size(), 0);
    bool need_words = false;
    bool need_jaro = false;
    for (size_t slot : plan.slots) {
      const FeatureDef &def = spec_.defs[slot];
      if (def.measure == Measure::kMongeElkan) need_words = true;
      if (def.measure == Measure::kJaro || def.measure == Measure::kJaroWinkler) {
        need_jaro = true;
      }
      if (def.tokenizer) {
        auto it = std::find(toks.begin(), toks.end(), *def.tokenizer);
        if (it == toks.end()) it = toks.insert(toks.end(), *def.tokenizer);
        slot_tok[slot] = static_cast<size_t>(it - toks.begin());
        if (def.tokenizer->kind == Tokenizer::Kind::kWhitespace) need_words = true;
      }
    }
    auto prepare = [&](const std::vector<const std::string *> &values) {
      std::vector<PreparedText> prepared(values.size());
      for (size_t i = 0; i < values.size(); ++i) {
        PreparedText &p = prepared[i];
        p.raw = values[i];
        p.chars = DecodeUtf8(*values[i]);
        if (need_words) p.words = Words(p.chars);
        for (const auto &tok : toks) p.token_sets.push_back(TokenSet(p.chars, p.words, tok));
      }
      return prepared;
    };
    auto pa = prepare(va);
    auto pb = prepare(vb);

    for (const auto &a : pa) {
      for (const auto &b : pb) {
        double jaro = need_jaro ? Jaro(a.chars, b.chars) : 0.0;
        for (size_t slot : plan.slots) {
          const FeatureDef &def = spec_.defs[slot];
          double v = 0;
          switch (def.measure) {
            case Measure::kLevenshtein:
              v = LevenshteinSimilarity(a.chars, b.chars);
              break;
            case Measure::kJaro:
              v = jaro;
              break;
            case Measure::kJaroWinkler:
              v = WinklerBoost(jaro, a.chars, b.chars);
              break;
            case Measure::kExactMatch:
              v = *a.raw == *b.raw ? 1.0 : 0.0;
              break;
            case Measure::kNeedlemanWunsch:
              v = a.chars.empty() && b.chars.empty()
                      ? 1.0
                      : NeedlemanWunsch(a.chars, b.chars) /
                            AlignmentScale(a.chars.size(), b.chars.size());
              break;
            case Measure::kSmithWaterman:
              v = a.chars.empty() && b.chars.empty()
                      ? 1.0
                      : SmithWaterman(a.chars, b.chars) /
                            AlignmentScale(a.chars.size(), b.chars.size());
              break;
            case Measure::kMongeElkan:
              v = MongeElkan(a.words, b.words);
              break;
            case Measure::kOverlapCoefficient:
            case Measure::kDice:
            case Measure::kCosine:
            case Measure::kJaccard: {
              const auto &sa = a.token_sets[slot_tok[slot]];
              const auto &sb = b.token_sets[slot_tok[slot]];
              v = TokenSetSimilarity(std::span<const uint64_t>(sa),
                                     std::span<const uint64_t>(sb), def.measure);
              break;
            }
            case Measure::kAbsoluteNorm:
              break;
          }
          out[slot] = std::max(out[slot], v);
        }
      }
    }
  }
}

FeatureMatrix Featurizer::ComputeAll(std::span<const CandidatePair> pairs,
                                     int workers) const {
  FeatureMatrix m;
  m.names = spec_.Names();
  m.pairs.assign(pairs.begin(), pairs.end());
  m.values.resize(pairs.size() * m.cols());
  const size_t cols = m.cols();
  ParallelFor(pairs.size(), workers, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      Compute(pairs[i], std::span<double>(m.values.data() + i * cols, cols));
    }
  });
  return m;
}

FeatureVector BuildFeatureVector(const CandidatePair &pair, const Table &left,
                                 const Table &right, const AttributeSchema &schema,
                                 const FeatureSpec &spec) {
  Featurizer f(schema, spec, left, right);
  FeatureVector v{pair, std::vector<double>(spec.size())};
  f.Compute(pair, v.values);
  return v;
}

std::string FeatureHeader(const std::vector<std::string> &names) {
  std::string h = "id_a,id_b";
  for (const auto &n : names) {
    h.push_back(',');
    h += n;
  }
  return h;
}

FeatureMatrixWriter::FeatureMatrixWriter(const std::string &path,
                                         const std::vector<std::string> &names)
    : out_(path), cols_(names.size()) {
  out_.WriteRaw(FeatureHeader(names));
}

void FeatureMatrixWriter::Append(const FeatureMatrix &chunk) {
  if (chunk.cols() != cols_) throw Error("feature chunk has wrong column count");
  std::string line;
  for (size_t i = 0; i < chunk.rows(); ++i) {
    line = std::to_string(chunk.pairs[i].id_a);
    line.push_back(',');
    line += std::to_string(chunk.pairs[i].id_b);
    for (double v : chunk.row(i)) {
      line.push_back(',');
      if (!IsMissing(v)) line += FormatDouble(v);
    }
    out_.WriteRaw(line);
  }
}

void FeatureMatrixWriter::Close() { out_.Close(); }

void WriteFeatureMatrix(const FeatureMatrix &matrix, const std::string &path) {
  FeatureMatrixWriter w(path, matrix.names);
  w.Append(matrix);
  w.Close();
}

FeatureMatrixReader::FeatureMatrixReader(const std::string &path) : path_(path), in_(path) {
  if (!in_.Next(fields_) || fields_.size() < 2) {
    throw UsageError(path + ": missing feature header");
  }
  names_.assign(fields_.begin() + 2, fields_.end());
}

bool FeatureMatrixReader::Next(FeatureMatrix &chunk, size_t max_rows) {
  chunk.names = names_;
  chunk.pairs.clear();
  chunk.values.clear();
  const size_t width = names_.size() + 2;
  while (chunk.pairs.size() < max_rows && in_.Next(fields_)) {
    const std::string where = path_ + ":" + std::to_string(in_.line());
    if (fields_.size() != width) {
      throw UsageError(where + ": expected " + std::to_string(width) + " fields");
    }
    auto a = ParseInt(fields_[0]);
    auto b = ParseInt(fields_[1]);
    if (!a || !b) throw UsageError(where + ": bad id");
    chunk.pairs.push_back({*a, *b});
    for (size_t i = 2; i < width; ++i) {
      if (fields_[i].empty()) {
        chunk.values.push_back(kMissing);
        continue;
      }
      auto v = ParseDouble(fields_[i]);
      if (!v) throw UsageError(where + ": bad value '" + fields_[i] + "'");
      chunk.values.push_back(*v);
    }
  }
  return !chunk.pairs.empty();
}

FeatureMatrix ReadFeatureMatrix(const std::string &path) {
  FeatureMatrixReader reader(path);
  FeatureMatrix m;
  m.names = reader.names();
  FeatureMatrix chunk;
  while (reader.Next(chunk, 65536)) {
    m.pairs.insert(m.pairs.end(), chunk.pairs.begin(), chunk.pairs.end());
    m.values.insert(m.values.end(), chunk.values.begin(), chunk.values.end());
  }
  return m;
}

}  // namespace erkit
