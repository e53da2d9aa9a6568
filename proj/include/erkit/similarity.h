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

#ifndef ERKIT_SIMILARITY_H_
#define ERKIT_SIMILARITY_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace erkit {

enum class Measure {
  // token-based
  kOverlapCoefficient,
  kDice,
  kCosine,
  kJaccard,
  // string-based
  kLevenshtein,
  kJaro,
  kJaroWinkler,
  kExactMatch,
  kNeedlemanWunsch,
  kSmithWaterman,
  kMongeElkan,
  // numeric
  kAbsoluteNorm,
};

const char *MeasureName(Measure m);
Measure ParseMeasure(const std::string &name);
bool IsTokenMeasure(Measure m);
bool IsStringMeasure(Measure m);
bool IsNumericMeasure(Measure m);
// Normalized measures return values in [0, 1]. Alignment scores are raw.
bool IsNormalizedMeasure(Measure m);

struct Tokenizer {
  enum class Kind { kWhitespace, kQgram };
  Kind kind = Kind::kQgram;
  int q = 3;

  std::string Name() const;  // "ws" or "qgram3"
  static Tokenizer Parse(const std::string &name);
  friend bool operator==(const Tokenizer &, const Tokenizer &) = default;
};

inline constexpr char kQgramPad = '#';

// Token multiset in order of appearance. q-grams are taken over code points
// with q-1 pad characters on each side.
std::vector<std::string> Tokenize(std::string_view s, const Tokenizer &tokenizer);

// Set-semantics token similarity: duplicates are ignored. Both sides empty
// score 1, exactly one empty scores 0.
double TokenSimilarity(std::span<const std::string> a, std::span<const std::string> b,
                       Measure m);
// Same on sorted, duplicate-free token id lists.
double TokenSetSimilarity(std::span<const uint32_t> a, std::span<const uint32_t> b,
                          Measure m);
double TokenSetSimilarity(std::span<const uint64_t> a, std::span<const uint64_t> b,
                          Measure m);

// Levenshtein distance over code points.
size_t LevenshteinDistance(std::u32string_view a, std::u32string_view b);
double LevenshteinSimilarity(std::u32string_view a, std::u32string_view b);
double Jaro(std::u32string_view a, std::u32string_view b);
double JaroWinkler(std::u32string_view a, std::u32string_view b);
// Winkler prefix boost (scale 0.1, prefix up to 4) applied to a Jaro score.
double WinklerBoost(double jaro, std::u32string_view a, std::u32string_view b);
// Global and local alignment with match +1, mismatch -1, gap -1.
int NeedlemanWunsch(std::u32string_view a, std::u32string_view b);
int SmithWaterman(std::u32string_view a, std::u32string_view b);
// Symmetric Monge-Elkan: the mean of both directed scores, each the average
// over one side's whitespace tokens of the best Jaro-Winkler against the
// other side's tokens.
double MongeElkan(const std::vector<std::u32string> &a_tokens,
                  const std::vector<std::u32string> &b_tokens);

std::u32string DecodeUtf8(std::string_view s);
std::string EncodeUtf8(std::u32string_view s);

// Score for a string measure. Needleman-Wunsch and Smith-Waterman return
// their raw integer alignment scores.
double StringSimilarity(std::string_view a, std::string_view b, Measure m);

// exact_match or absolute_norm. Throws on non-finite input.
double NumericSimilarity(double x, double y, Measure m);

}  // namespace erkit

#endif  // ERKIT_SIMILARITY_H_
