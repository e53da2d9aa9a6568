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

#include "erkit/similarity.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "erkit/common.h"

namespace erkit {

namespace {

struct MeasureInfo {
  Measure measure;
  const char *name;
};

constexpr MeasureInfo kMeasures[] = {
    {Measure::kOverlapCoefficient, "overlap_coefficient"},
    {Measure::kDice, "dice"},
    {Measure::kCosine, "cosine"},
    {Measure::kJaccard, "jaccard"},
    {Measure::kLevenshtein, "levenshtein_sim"},
    {Measure::kJaro, "jaro"},
    {Measure::kJaroWinkler, "jaro_winkler"},
    {Measure::kExactMatch, "exact_match"},
    {Measure::kNeedlemanWunsch, "needleman_wunsch"},
    {Measure::kSmithWaterman, "smith_waterman"},
    {Measure::kMongeElkan, "monge_elkan"},
    {Measure::kAbsoluteNorm, "absolute_norm"},
};

}  // namespace

const char *MeasureName(Measure m) {
  for (const auto &info : kMeasures) {
    if (info.measure == m) return info.name;
  }
  return "unknown";
}

Measure ParseMeasure(const std::string &name) {
  for (const auto &info : kMeasures) {
    if (name == info.name) return info.measure;
  }
  throw UsageError("unknown similarity measure '" + name + "'");
}

bool IsTokenMeasure(Measure m) {
  return m == Measure::kOverlapCoefficient || m == Measure::kDice ||
         m == Measure::kCosine || m == Measure::kJaccard;
}

bool IsStringMeasure(Measure m) {
  return m == Measure::kLevenshtein || m == Measure::kJaro ||
         m == Measure::kJaroWinkler || m == Measure::kExactMatch ||
         m == Measure::kNeedlemanWunsch || m == Measure::kSmithWaterman ||
         m == Measure::kMongeElkan;
}

bool IsNumericMeasure(Measure m) {
  return m == Measure::kExactMatch || m == Measure::kAbsoluteNorm;
}

bool IsNormalizedMeasure(Measure m) {
  return m != Measure::kNeedlemanWunsch && m != Measure::kSmithWaterman;
}

std::string Tokenizer::Name() const {
  return kind == Kind::kWhitespace ? "ws" : "qgram" + std::to_string(q);
}

Tokenizer Tokenizer::Parse(const std::string &name) {
  if (name == "ws" || name == "whitespace") return {Kind::kWhitespace, 0};
  if (name.rfind("qgram", 0) == 0) {
    int q = name.size() == 5 ? 3 : std::atoi(name.c_str() + 5);
    if (q < 2) throw UsageError("q-gram size must be >= 2 in '" + name + "'");
    return {Kind::kQgram, q};
  }
  throw UsageError("unknown tokenizer '" + name + "'");
}

std::u32string DecodeUtf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    char32_t cp;
    size_t len;
    if (c < 0x80) {
      cp = c;
      len = 1;
    } else if ((c >> 5) == 0x6) {
      cp = c & 0x1f;
      len = 2;
    } else if ((c >> 4) == 0xe) {
      cp = c & 0x0f;
      len = 3;
    } else if ((c >> 3) == 0x1e) {
      cp = c & 0x07;
      len = 4;
    } else {
      // Invalid lead byte: keep it as a single unit.
      out.push_back(c);
      ++i;
      continue;
    }
    if (i + len > s.size()) {
      out.push_back(c);
      ++i;
      continue;
    }
    bool ok = true;
    for (size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc >> 6) != 0x2) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3f);
    }
    if (!ok) {
      out.push_back(c);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
  }
  return out;
}

std::vector<std::string> Tokenize(std::string_view s, const Tokenizer &tokenizer) {
  std::vector<std::string> tokens;
  if (s.empty()) return tokens;
  if (tokenizer.kind == Tokenizer::Kind::kWhitespace) {
    size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      size_t start = i;
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      if (i > start) tokens.emplace_back(s.substr(start, i - start));
    }
    return tokens;
  }
  auto q = static_cast<size_t>(tokenizer.q);
  std::u32string padded(q - 1, kQgramPad);
  padded += DecodeUtf8(s);
  padded.append(q - 1, kQgramPad);
  for (size_t i = 0; i + q <= padded.size(); ++i) {
    tokens.push_back(EncodeUtf8(std::u32string_view(padded).substr(i, q)));
  }
  return tokens;
}

namespace {

double SetScore(size_t inter, size_t na, size_t nb, Measure m) {
  if (na == 0 && nb == 0) return 1.0;
  if (na == 0 || nb == 0) return 0.0;
  switch (m) {
    case Measure::kJaccard:
      return static_cast<double>(inter) / static_cast<double>(na + nb - inter);
    case Measure::kDice:
      return 2.0 * static_cast<double>(inter) / static_cast<double>(na + nb);
    case Measure::kCosine:
      return static_cast<double>(inter) /
             std::sqrt(static_cast<double>(na) * static_cast<double>(nb));
    case Measure::kOverlapCoefficient:
      return static_cast<double>(inter) / static_cast<double>(std::min(na, nb));
    default:
      throw UsageError(std::string("not a token measure: ") + MeasureName(m));
  }
}

}  // namespace

double TokenSimilarity(std::span<const std::string> a, std::span<const std::string> b,
                       Measure m) {
  if (!IsTokenMeasure(m)) {
    throw UsageError(std::string("not a token measure: ") + MeasureName(m));
  }
  std::vector<std::string> sa(a.begin(), a.end());
  std::vector<std::string> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  std::sort(sb.begin(), sb.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  std::vector<std::string> inter;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::back_inserter(inter));
  return SetScore(inter.size(), sa.size(), sb.size(), m);
}

namespace {

template <typename T>
double SortedSetSimilarity(std::span<const T> a, std::span<const T> b, Measure m) {
  size_t inter = 0;
  size_t i = 0;
  size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++inter;
      ++i;
      ++j;
    }
  }
  return SetScore(inter, a.size(), b.size(), m);
}

}  // namespace

double TokenSetSimilarity(std::span<const uint32_t> a, std::span<const uint32_t> b,
                          Measure m) {
  return SortedSetSimilarity(a, b, m);
}

double TokenSetSimilarity(std::span<const uint64_t> a, std::span<const uint64_t> b,
                          Measure m) {
  return SortedSetSimilarity(a, b, m);
}

size_t LevenshteinDistance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<size_t> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t up = row[j];
      size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

double LevenshteinSimilarity(std::u32string_view a, std::u32string_view b) {
  size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(LevenshteinDistance(a, b)) /
                   static_cast<double>(longest);
}

double Jaro(std::u32string_view a, std::u32string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  size_t longest = std::max(a.size(), b.size());
  size_t window = longest / 2 >= 1 ? longest / 2 - 1 : 0;
  std::vector<char> a_matched(a.size(), 0);
  std::vector<char> b_matched(b.size(), 0);
  size_t matches = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    size_t lo = i > window ? i - window : 0;
    size_t hi = std::min(b.size(), i + window + 1);
    for (size_t j = lo; j < hi; ++j) {
      if (!b_matched[j] && b[j] == a[i]) {
        a_matched[i] = b_matched[j] = 1;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;
  size_t half_transpositions = 0;
  size_t k = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a_matched[i]) continue;
    while (!b_matched[k]) ++k;
    if (a[i] != b[k]) ++half_transpositions;
    ++k;
  }
  double m = static_cast<double>(matches);
  double t = static_cast<double>(half_transpositions) / 2.0;
  return (m / static_cast<double>(a.size()) + m / static_cast<double>(b.size()) +
          (m - t) / m) /
         3.0;
}

double WinklerBoost(double jaro, std::u32string_view a, std::u32string_view b) {
  constexpr double kPrefixScale = 0.1;
  constexpr size_t kMaxPrefix = 4;
  size_t prefix = 0;
  size_t limit = std::min({a.size(), b.size(), kMaxPrefix});
  while (prefix < limit && a[prefix] == b[prefix]) ++prefix;
  return jaro + static_cast<double>(prefix) * kPrefixScale * (1.0 - jaro);
}

double JaroWinkler(std::u32string_view a, std::u32string_view b) {
  return WinklerBoost(Jaro(a, b), a, b);
}

int NeedlemanWunsch(std::u32string_view a, std::u32string_view b) {
  constexpr int kMatch = 1, kMismatch = -1, kGap = -1;
  std::vector<int> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j) * kGap;
  for (size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i) * kGap;
    for (size_t j = 1; j <= b.size(); ++j) {
      int up = row[j];
      int sub = diag + (a[i - 1] == b[j - 1] ? kMatch : kMismatch);
      row[j] = std::max({sub, up + kGap, row[j - 1] + kGap});
      diag = up;
    }
  }
  return row[b.size()];
}

int SmithWaterman(std::u32string_view a, std::u32string_view b) {
  constexpr int kMatch = 1, kMismatch = -1, kGap = -1;
  std::vector<int> row(b.size() + 1, 0);
  int best = 0;
  for (size_t i = 1; i <= a.size(); ++i) {
    int diag = 0;
    row[0] = 0;
    for (size_t j = 1; j <= b.size(); ++j) {
      int up = row[j];
      int sub = diag + (a[i - 1] == b[j - 1] ? kMatch : kMismatch);
      row[j] = std::max({0, sub, up + kGap, row[j - 1] + kGap});
      best = std::max(best, row[j]);
      diag = up;
    }
  }
  return best;
}

namespace {

double DirectedMongeElkan(const std::vector<std::u32string> &a,
                          const std::vector<std::u32string> &b) {
  double sum = 0;
  for (const auto &ta : a) {
    double best = 0;
    for (const auto &tb : b) best = std::max(best, JaroWinkler(ta, tb));
    sum += best;
  }
  return sum / static_cast<double>(a.size());
}

}  // namespace

double MongeElkan(const std::vector<std::u32string> &a_tokens,
                  const std::vector<std::u32string> &b_tokens) {
  if (a_tokens.empty() && b_tokens.empty()) return 1.0;
  if (a_tokens.empty() || b_tokens.empty()) return 0.0;
  return (DirectedMongeElkan(a_tokens, b_tokens) +
          DirectedMongeElkan(b_tokens, a_tokens)) /
         2.0;
}

namespace {

std::vector<std::u32string> WhitespaceTokens32(std::string_view s) {
  std::vector<std::u32string> out;
  for (const auto &t : Tokenize(s, {Tokenizer::Kind::kWhitespace, 0})) {
    out.push_back(DecodeUtf8(t));
  }
  return out;
}

}  // namespace

double StringSimilarity(std::string_view a, std::string_view b, Measure m) {
  if (!IsStringMeasure(m)) {
    throw UsageError(std::string("not a string measure: ") + MeasureName(m));
  }
  if (m == Measure::kExactMatch) return a == b ? 1.0 : 0.0;
  if (m == Measure::kMongeElkan) {
    return MongeElkan(WhitespaceTokens32(a), WhitespaceTokens32(b));
  }
  std::u32string ua = DecodeUtf8(a);
  std::u32string ub = DecodeUtf8(b);
  switch (m) {
    case Measure::kLevenshtein:
      return LevenshteinSimilarity(ua, ub);
    case Measure::kJaro:
      return Jaro(ua, ub);
    case Measure::kJaroWinkler:
      return JaroWinkler(ua, ub);
    case Measure::kNeedlemanWunsch:
      return NeedlemanWunsch(ua, ub);
    case Measure::kSmithWaterman:
      return SmithWaterman(ua, ub);
    default:
      break;
  }
  throw UsageError(std::string("not a string measure: ") + MeasureName(m));
}

double NumericSimilarity(double x, double y, Measure m) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw UsageError("numeric similarity: non-finite input");
  }
  if (m == Measure::kExactMatch) return x == y ? 1.0 : 0.0;
  if (m != Measure::kAbsoluteNorm) {
    throw UsageError(std::string("not a numeric measure: ") + MeasureName(m));
  }
  if (x == y) return 1.0;
  double denom = std::max(std::fabs(x), std::fabs(y));
  double v = 1.0 - std::fabs(x - y) / denom;
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace erkit
