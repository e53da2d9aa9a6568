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

#include <gtest/gtest.h>

#include <set>

#include "erkit/indexing.h"
#include "erkit/rng.h"
#include "oracles.h"
#include "test_util.h"

namespace erkit {
namespace {

using testing::MakeTable;

IndexResult Index(const oracle::IndexCase &c, int workers = 1) {
  return IndexDataset(c.tables, c.schema, c.config, workers).result;
}

AttributeSchema PhoneAddressSchema() {
  AttributeSchema s;
  s.attributes = {{"dob", AttributeKind::kScalar, {"dob"}, DataType::kText},
                  {"phone", AttributeKind::kList, {"phone1", "phone2", "phone3"}, DataType::kText},
                  {"address", AttributeKind::kList, {"address1", "address2"}, DataType::kText}};
  return s;
}

TEST(ExpandRows, ThreePhoneTwoAddressRecordGivesSixRows) {
  Table t = MakeTable({"dob", "phone1", "phone2", "phone3", "address1", "address2"},
                      {{"1978-03-19", "0511111111", "0533333333", "0599999999",
                        "2 Acadaca St Sydney 2000", "4 Down Under Rd Perth 6000"}});
  t.row_ids = {10001};
  AttributeSchema s = PhoneAddressSchema();
  std::vector<std::string> f = {"dob", "phone", "address"};
  std::vector<Table> tables = {t};
  auto dicts = EncodeAttributes(tables, s, f);
  ExpandedTable e = ExpandRows(t, s, f, dicts);
  ASSERT_EQ(e.num_rows(), 6u);
  std::set<std::vector<std::string>> got;
  for (size_t r = 0; r < e.num_rows(); ++r) {
    EXPECT_EQ(e.record_ids[e.row_record[r]], 10001);
    std::vector<std::string> tuple;
    for (size_t k = 0; k < f.size(); ++k) tuple.push_back(dicts.at(f[k]).Decode(e.code(r, k)));
    got.insert(tuple);
  }
  std::set<std::vector<std::string>> want;
  for (const char *p : {"0511111111", "0533333333", "0599999999"}) {
    for (const char *a : {"2 Acadaca St Sydney 2000", "4 Down Under Rd Perth 6000"}) {
      want.insert({"1978-03-19", p, a});
    }
  }
  EXPECT_EQ(got, want);
}

TEST(ExpandRows, DuplicatesCollapseAndNullsKeepOneRow) {
  Table t = MakeTable({"dob", "phone1", "phone2", "phone3", "address1", "address2"},
                      {{"d", "p1", "p1", "p2", "a1", "a2"},
                       {"d", "", "", "", "", ""},
                       {"", "p9", "", "", "a1", ""}});
  AttributeSchema s = PhoneAddressSchema();
  std::vector<std::string> f = {"dob", "phone", "address"};
  std::vector<Table> tables = {t};
  auto dicts = EncodeAttributes(tables, s, f);
  ExpandedTable e = ExpandRows(t, s, f, dicts);
  std::vector<size_t> per_record(3, 0);
  for (uint32_t r : e.row_record) ++per_record[r];
  EXPECT_EQ(per_record, (std::vector<size_t>{4, 1, 1}));
  // The all-null record carries null placeholders.
  for (size_t r = 0; r < e.num_rows(); ++r) {
    if (e.row_record[r] == 1) {
      EXPECT_EQ(e.code(r, 1), kNullCode);
      EXPECT_EQ(e.code(r, 2), kNullCode);
    }
  }
}

TEST(FeatureSubsets, BinomialCountsAndOrder) {
  auto s = FeatureSubsets(4);
  ASSERT_EQ(s.size(), 15u);
  std::vector<size_t> by_len(5, 0);
  for (const auto &x : s) ++by_len[x.size()];
  EXPECT_EQ(by_len, (std::vector<size_t>{0, 4, 6, 4, 1}));
  for (size_t i = 1; i < s.size(); ++i) {
    EXPECT_TRUE(s[i - 1].size() < s[i].size() ||
                (s[i - 1].size() == s[i].size() && s[i - 1] < s[i]));
  }
  EXPECT_EQ(FeatureSubsets(1), (std::vector<std::vector<size_t>>{{0}}));
  EXPECT_EQ(FeatureSubsets(3).size(), 7u);
}

TEST(BlockAndPair, CompleteGroupOfThree) {
  Table t = MakeTable({"phone"}, {{"p"}, {"p"}, {"p"}, {"q"}});
  oracle::IndexCase c;
  c.tables = {t};
  c.schema.attributes = {{"phone", AttributeKind::kScalar, {"phone"}, DataType::kText}};
  c.config.features = {"phone"};
  IndexResult r = Index(c);
  EXPECT_EQ(r.pairs, (std::vector<CandidatePair>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(r.stats.subsets_evaluated, 1u);
  EXPECT_EQ(r.stats.pairs_emitted, 3u);
}

TEST(BlockAndPair, OversizedGroupIsSkipped) {
  std::vector<std::vector<std::string>> rows(1500, {"1978-03-19"});
  oracle::IndexCase c;
  c.tables = {MakeTable({"dob"}, rows)};
  c.schema.attributes = {{"dob", AttributeKind::kScalar, {"dob"}, DataType::kText}};
  c.config.features = {"dob"};
  c.config.maxrow = 1000;
  IndexResult r = Index(c);
  EXPECT_TRUE(r.pairs.empty());
  EXPECT_EQ(r.stats.groups_skipped_over_maxrow, 1u);
}

TEST(BlockAndPair, AllDistinctGivesNoPairs) {
  oracle::IndexCase c;
  c.tables = {MakeTable({"x"}, {{"a"}, {"b"}, {"c"}})};
  c.schema.attributes = {{"x", AttributeKind::kScalar, {"x"}, DataType::kText}};
  c.config.features = {"x"};
  EXPECT_TRUE(Index(c).pairs.empty());
}

TEST(IndexDataset, MinimalLink) {
  oracle::IndexCase c;
  Table a = MakeTable({"phone"}, {{"p"}, {"z"}});
  Table b = MakeTable({"phone"}, {{"p"}});
  b.row_ids = {7};
  c.tables = {a, b};
  c.schema.attributes = {{"phone", AttributeKind::kScalar, {"phone"}, DataType::kText}};
  c.config.features = {"phone"};
  c.config.mode = Mode::kLink;
  EXPECT_EQ(Index(c).pairs, (std::vector<CandidatePair>{{0, 7}}));
}

TEST(IndexDataset, ConfigValidation) {
  oracle::IndexCase c;
  c.tables = {MakeTable({"x"}, {{"a"}})};
  c.schema.attributes = {{"x", AttributeKind::kScalar, {"x"}, DataType::kText}};
  c.config.features = {"nope"};
  EXPECT_THROW(Index(c), UsageError);
  c.config.features = {"x"};
  c.config.maxrow = 1;
  EXPECT_THROW(Index(c), UsageError);
}

TEST(IndexDataset, MatchesBruteForceOracle) {
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    oracle::IndexCase c = oracle::RandomIndexCase(rng, 300);
    IndexResult r = Index(c);
    std::set<CandidatePair> want = oracle::BruteForcePairs(c);
    EXPECT_EQ(std::set<CandidatePair>(r.pairs.begin(), r.pairs.end()), want) << "case " << i;
    EXPECT_EQ(r.stats.subsets_evaluated, (uint64_t{1} << c.config.features.size()) - 1);
    EXPECT_EQ(r.stats.pairs_emitted, r.pairs.size());
    EXPECT_TRUE(std::is_sorted(r.pairs.begin(), r.pairs.end()));
    EXPECT_EQ(std::adjacent_find(r.pairs.begin(), r.pairs.end()), r.pairs.end());
    uint64_t bound = c.config.maxrow * (c.config.maxrow - 1) / 2;
    EXPECT_LE(r.stats.max_pairs_per_group, bound);
    for (const auto &p : r.pairs) {
      if (c.config.mode == Mode::kDedup) {
        EXPECT_LT(p.id_a, p.id_b);
      } else {
        EXPECT_EQ(p.id_a % 3, 0);  // left ids
        EXPECT_EQ(p.id_b % 3, 1);  // right ids
      }
    }
  }
}

TEST(IndexDataset, LastNameDobAgainstOracle) {
  Rng rng(5);
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < 500; ++i) {
    rows.push_back({"n" + std::to_string(rng.Uniform(80)), "d" + std::to_string(rng.Uniform(40))});
  }
  oracle::IndexCase c;
  c.tables = {MakeTable({"last_name", "dob"}, rows)};
  c.schema.attributes = {{"last_name", AttributeKind::kScalar, {"last_name"}, DataType::kText},
                         {"dob", AttributeKind::kScalar, {"dob"}, DataType::kText}};
  c.config.features = {"last_name", "dob"};
  c.config.maxrow = 50;
  IndexResult r = Index(c);
  EXPECT_EQ(std::set<CandidatePair>(r.pairs.begin(), r.pairs.end()), oracle::BruteForcePairs(c));
}

TEST(IndexDataset, MonotoneInMaxrowAndFeatures) {
  Rng rng(21);
  for (int i = 0; i < 15; ++i) {
    oracle::IndexCase c = oracle::RandomIndexCase(rng, 300);
    c.config.maxrow = 5;
    IndexResult small = Index(c);
    c.config.maxrow = 50;
    IndexResult big = Index(c);
    EXPECT_TRUE(std::includes(big.pairs.begin(), big.pairs.end(), small.pairs.begin(),
                              small.pairs.end()));
    if (c.config.features.size() > 1) {
      oracle::IndexCase fewer = c;
      fewer.config.features.pop_back();
      IndexResult f = Index(fewer);
      EXPECT_TRUE(
          std::includes(big.pairs.begin(), big.pairs.end(), f.pairs.begin(), f.pairs.end()));
    }
  }
}

TEST(IndexDataset, WorkerCountDoesNotChangeOutput) {
  Rng rng(8);
  for (int i = 0; i < 5; ++i) {
    oracle::IndexCase c = oracle::RandomIndexCase(rng, 600);
    IndexResult one = Index(c, 1);
    for (int w : {2, 4, 8}) {
      IndexResult many = Index(c, w);
      EXPECT_EQ(many.pairs, one.pairs);
      EXPECT_EQ(many.stats.ToJson(), one.stats.ToJson());
    }
  }
}

TEST(Pairs, FileRoundTrip) {
  testing::TempDir dir("pairs");
  std::vector<CandidatePair> p = {{1, 2}, {3, 9}};
  WritePairs(p, dir.File("p.csv"));
  EXPECT_EQ(ReadPairs(dir.File("p.csv")), p);
  WritePairs(p, dir.File("l.csv"), Mode::kLink);
  EXPECT_EQ(ReadFile(dir.File("l.csv")).substr(0, 15), "left_id,right_i");
  EXPECT_EQ(ReadPairs(dir.File("l.csv")), p);
}

}  // namespace
}  // namespace erkit
