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

#include "erkit/synthetic.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "erkit/common.h"
#include "erkit/rng.h"

namespace erkit {

const char *CorruptionProfileName(CorruptionProfile p) {
  switch (p) {
    case CorruptionProfile::kLight:
      return "light";
    case CorruptionProfile::kModerate:
      return "moderate";
    case CorruptionProfile::kHeavy:
      return "heavy";
  }
  return "moderate";
}

CorruptionProfile ParseCorruptionProfile(const std::string &name) {
  if (name == "light") return CorruptionProfile::kLight;
  if (name == "moderate") return CorruptionProfile::kModerate;
  if (name == "heavy") return CorruptionProfile::kHeavy;
  throw UsageError("unknown corruption profile '" + name + "' (light, moderate, heavy)");
}

namespace {

const std::vector<std::string> kOnsets = {
    "b", "br", "c", "ch", "d", "f", "g", "gr", "h", "j", "k", "l", "m", "n",
    "p", "r", "s", "sh", "st", "t", "th", "v", "w", "y", "z", "bl", "cr", "dr"};
const std::vector<std::string> kVowels = {"a", "e", "i", "o", "u", "ai", "ea", "ou", "y"};
const std::vector<std::string> kCodas = {"", "", "n", "r", "s", "l", "m", "t", "ck",
                                         "nd", "rt", "ll", "ng", "x"};
const std::vector<std::string> kSuffixes = {"St", "Ave", "Rd", "Ln", "Dr", "Ct", "Way", "Pl"};

std::string Capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string MakeWord(Rng &rng, int min_syl, int max_syl) {
  std::string w;
  auto syllables = rng.Range(min_syl, max_syl);
  for (int64_t i = 0; i < syllables; ++i) {
    w += rng.Pick(kOnsets) + rng.Pick(kVowels) + rng.Pick(kCodas);
  }
  return Capitalize(w);
}

std::vector<std::string> MakePool(Rng &rng, size_t size, int min_syl, int max_syl) {
  std::vector<std::string> pool;
  std::unordered_set<std::string> seen;
  while (pool.size() < size) {
    std::string w = MakeWord(rng, min_syl, max_syl);
    if (seen.insert(w).second) pool.push_back(std::move(w));
  }
  return pool;
}

// Days since 1970-01-01 to a civil date.
std::string DateFromDays(int64_t z) {
  z += 719468;
  int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  int64_t doe = z - era * 146097;
  int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  int64_t y = yoe + era * 400;
  int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  int64_t mp = (5 * doy + 2) / 153;
  int64_t d = doy - (153 * mp + 2) / 5 + 1;
  int64_t m = mp < 10 ? mp + 3 : mp - 9;
  if (m <= 2) ++y;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", static_cast<int>(y), static_cast<int>(m),
                static_cast<int>(d));
  return buf;
}

constexpr int64_t kDobFirstDay = -10957;  // 1940-01-01
constexpr int64_t kDobLastDay = 12783;    // 2004-12-31

struct Person {
  Cell first_name, last_name, dob, phone1, phone2, address1, address2;
};

class Generator {
 public:
  explicit Generator(uint64_t seed) : rng_(seed) {
    surnames_ = MakePool(rng_, 20000, 2, 3);
    first_names_ = MakePool(rng_, 2000, 1, 2);
    streets_ = MakePool(rng_, 3000, 1, 2);
  }

  Person Base() {
    Person p;
    p.first_name = rng_.Pick(first_names_);
    p.last_name = rng_.Pick(surnames_);
    p.dob = DateFromDays(rng_.Range(kDobFirstDay, kDobLastDay));
    p.phone1 = Phone();
    if (rng_.Bernoulli(0.05)) {
      p.phone2 = "0000000000";  // placeholder the cleaning rules nullify
    } else if (rng_.Bernoulli(0.3)) {
      p.phone2 = Phone();
    }
    p.address1 = Address();
    if (rng_.Bernoulli(0.25)) p.address2 = Address();
    return p;
  }

  // Another member of p's household: same surname and address.
  Person Housemate(const Person &p) {
    Person h = Base();
    h.last_name = p.last_name;
    h.address1 = p.address1;
    if (rng_.Bernoulli(0.5)) h.phone1 = p.phone1;
    return h;
  }

  Person Duplicate(const Person &base, CorruptionProfile profile) {
    Person d = base;
    int count = 1;
    if (profile == CorruptionProfile::kModerate) count = static_cast<int>(rng_.Range(1, 2));
    if (profile == CorruptionProfile::kHeavy) count = static_cast<int>(rng_.Range(2, 4));
    for (int i = 0; i < count; ++i) {
      switch (rng_.Uniform(5)) {
        case 0:
          Typo(d);
          break;
        case 1:
          TokenSwap(d);
          break;
        case 2:
          d.phone2 = d.phone1;
          d.phone1 = Phone();
          break;
        case 3:
          d.address2 = d.address1;
          d.address1 = Address();
          break;
        default:
          Drop(d);
          break;
      }
    }
    return d;
  }

  Rng &rng() { return rng_; }

 private:
  std::string Phone() {
    std::string s = std::to_string(rng_.Range(200, 989));
    s += std::to_string(rng_.Range(200, 999));
    char buf[8];
    std::snprintf(buf, sizeof buf, "%04d", static_cast<int>(rng_.Range(0, 9999)));
    return s + buf;
  }

  std::string Address() {
    return std::to_string(rng_.Range(1, 9999)) + " " + rng_.Pick(streets_) + " " +
           rng_.Pick(kSuffixes);
  }

  void EditChars(std::string &s, bool digits) {
    if (s.empty()) return;
    auto pos = static_cast<size_t>(rng_.Uniform(s.size()));
    char c = digits ? static_cast<char>('0' + rng_.Uniform(10))
                    : static_cast<char>('a' + rng_.Uniform(26));
    if (digits) {
      while (pos < s.size() && (s[pos] < '0' || s[pos] > '9')) ++pos;
      if (pos == s.size()) return;
      s[pos] = c;
      return;
    }
    switch (rng_.Uniform(4)) {
      case 0:
        s[pos] = c;
        break;
      case 1:
        s.insert(s.begin() + static_cast<long>(pos), c);
        break;
      case 2:
        if (s.size() > 1) s.erase(s.begin() + static_cast<long>(pos));
        break;
      default:
        if (pos + 1 < s.size()) std::swap(s[pos], s[pos + 1]);
        break;
    }
  }

  void Typo(Person &d) {
    Cell *fields[] = {&d.first_name, &d.last_name, &d.dob, &d.address1};
    auto which = rng_.Uniform(4);
    Cell &cell = *fields[which];
    if (cell) EditChars(*cell, which == 2);
  }

  void TokenSwap(Person &d) {
    if (rng_.Bernoulli(0.5)) {
      std::swap(d.first_name, d.last_name);
      return;
    }
    if (!d.address1) return;
    std::string &a = *d.address1;
    auto space = a.find(' ');
    if (space == std::string::npos) return;
    // "12 Oak St" -> "Oak 12 St"
    auto second = a.find(' ', space + 1);
    std::string head = a.substr(0, space);
    std::string mid = a.substr(space + 1, second == std::string::npos ? std::string::npos
                                                                        : second - space - 1);
    std::string tail = second == std::string::npos ? "" : a.substr(second);
    a = mid + " " + head + tail;
  }

  void Drop(Person &d) {
    Cell *fields[] = {&d.first_name, &d.dob, &d.phone1, &d.address1, &d.phone2, &d.address2};
    fields[rng_.Uniform(6)]->reset();
  }

  Rng rng_;
  std::vector<std::string> surnames_;
  std::vector<std::string> first_names_;
  std::vector<std::string> streets_;
};

}  // namespace

SyntheticData GenerateSynthetic(const SyntheticOptions &options) {
  if (options.n < 10) throw UsageError("synth: n must be >= 10");
  if (!(options.dup_rate >= 0.0 && options.dup_rate <= 0.5)) {
    throw UsageError("synth: dup_rate must be within [0, 0.5]");
  }
  Generator gen(options.seed);
  Rng &rng = gen.rng();
  const size_t n = options.n;
  auto dups = static_cast<size_t>(std::ceil(static_cast<double>(n) * options.dup_rate - 1e-9));

  std::vector<Person> people;
  people.reserve(n + dups);
  for (size_t i = 0; i < n; ++i) {
    if (i > 0 && rng.Bernoulli(0.15)) {
      people.push_back(gen.Housemate(people[static_cast<size_t>(rng.Uniform(i))]));
    } else {
      people.push_back(gen.Base());
    }
  }
  std::vector<size_t> base_of(dups);
  for (size_t k = 0; k < dups; ++k) {
    base_of[k] = static_cast<size_t>(rng.Uniform(n));
    people.push_back(gen.Duplicate(people[base_of[k]], options.corruption));
  }

  std::vector<int64_t> ids(people.size());
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int64_t>(i);
  rng.Shuffle(ids);

  SyntheticData out;
  // Truth: base-dup and dup-dup pairs sharing a base.
  std::vector<std::vector<int64_t>> family(n);
  for (size_t k = 0; k < dups; ++k) family[base_of[k]].push_back(ids[n + k]);
  for (size_t b = 0; b < n; ++b) {
    if (family[b].empty()) continue;
    std::vector<int64_t> members = family[b];
    members.push_back(ids[b]);
    std::sort(members.begin(), members.end());
    for (size_t i = 0; i < members.size(); ++i) {
      for (size_t j = i + 1; j < members.size(); ++j) {
        out.truth.push_back({members[i], members[j]});
      }
    }
  }
  std::sort(out.truth.begin(), out.truth.end());

  // Rows in ascending id order.
  std::vector<size_t> order(people.size());
  for (size_t i = 0; i < people.size(); ++i) order[static_cast<size_t>(ids[i])] = i;
  Table &t = out.table;
  t.name = "synthetic";
  const char *names[] = {"first_name", "last_name", "dob",      "phone1",
                         "phone2",     "address1",  "address2", "country"};
  for (const char *name : names) {
    Column c;
    c.name = name;
    c.cells.reserve(people.size());
    t.columns.push_back(std::move(c));
  }
  for (size_t r = 0; r < order.size(); ++r) {
    Person &p = people[order[r]];
    t.row_ids.push_back(static_cast<int64_t>(r));
    t.columns[0].cells.push_back(std::move(p.first_name));
    t.columns[1].cells.push_back(std::move(p.last_name));
    t.columns[2].cells.push_back(std::move(p.dob));
    t.columns[3].cells.push_back(std::move(p.phone1));
    t.columns[4].cells.push_back(std::move(p.phone2));
    t.columns[5].cells.push_back(std::move(p.address1));
    t.columns[6].cells.push_back(std::move(p.address2));
    t.columns[7].cells.push_back(std::string("US"));
  }
  return out;
}

AttributeSchema SyntheticSchema() {
  AttributeSchema s;
  s.attributes = {
      {"first_name", AttributeKind::kScalar, {"first_name"}, DataType::kText},
      {"last_name", AttributeKind::kScalar, {"last_name"}, DataType::kText},
      {"dob", AttributeKind::kScalar, {"dob"}, DataType::kText},
      {"phone", AttributeKind::kList, {"phone1", "phone2"}, DataType::kText},
      {"address", AttributeKind::kList, {"address1", "address2"}, DataType::kText},
  };
  return s;
}

void WriteTruth(const std::vector<CandidatePair> &truth, const std::string &path) {
  WritePairs(truth, path, Mode::kDedup);
}

}  // namespace erkit
