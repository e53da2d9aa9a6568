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

#include <map>
#include <set>

#include "erkit/cleaning.h"
#include "erkit/common.h"
#include "erkit/dictionary.h"
#include "erkit/io.h"
#include "erkit/profile.h"
#include "erkit/rng.h"
#include "erkit/schema.h"
#include "erkit/table.h"
#include "test_util.h"

namespace erkit {
namespace {

using testing::MakeTable;
using testing::TempDir;

TEST(Csv, QuotedFieldsRoundTrip) {
  TempDir dir("csv");
  std::vector<std::vector<std::string>> rows = {
      {"a", "b,c", "say \"hi\""}, {"multi\nline", "", "x"}, {"", "", ""}};
  {
    CsvWriter w(dir.File("q.csv"));
    for (const auto &r : rows) w.Write(r);
    w.Close();
  }
  CsvReader r(dir.File("q.csv"));
  std::vector<std::string> f;
  for (const auto &want : rows) {
    ASSERT_TRUE(r.Next(f));
    EXPECT_EQ(f, want);
  }
  EXPECT_FALSE(r.Next(f));
}

TEST(Csv, CrlfAndLineNumbers) {
  TempDir dir("crlf");
  auto path = dir.Write("c.csv", "h1,h2\r\n1,\"two\nlines\"\r\n3,4\r\n");
  CsvReader r(path);
  std::vector<std::string> f;
  ASSERT_TRUE(r.Next(f));
  EXPECT_EQ(f, (std::vector<std::string>{"h1", "h2"}));
  ASSERT_TRUE(r.Next(f));
  EXPECT_EQ(f[1], "two\nlines");
  ASSERT_TRUE(r.Next(f));
  EXPECT_EQ(r.line(), 4u);
  EXPECT_EQ(f, (std::vector<std::string>{"3", "4"}));
}

TEST(Io, Sha256KnownVectors) {
  EXPECT_EQ(Sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Io, FormatDoubleRoundTrips) {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    double v = (rng.UniformDouble() - 0.5) * 1e6;
    EXPECT_EQ(*ParseDouble(FormatDouble(v)), v);
  }
  EXPECT_EQ(FormatFixed(0.5, 6), "0.500000");
  EXPECT_FALSE(ParseDouble("abc").has_value());
  EXPECT_EQ(*ParseInt(" 42 "), 42);
}

TEST(LoadDataset, SynthesizesSequentialIds) {
  TempDir dir("load");
  auto path = dir.Write("d.csv", "name,dob\nann,1990\nbob,1991\ncy,1992\n");
  LoadResult r = LoadDataset(path);
  EXPECT_EQ(r.table.row_ids, (std::vector<int64_t>{0, 1, 2}));
  EXPECT_EQ(r.table.num_columns(), 2u);
  EXPECT_EQ(*r.table.GetColumn("name").cells[1], "bob");
}

TEST(LoadDataset, TypeFailureBecomesNullWithWarning) {
  TempDir dir("types");
  auto path = dir.Write("d.csv", "name,age\nann,abc\nbob,41\n");
  LoadOptions o;
  o.declared_types["age"] = DataType::kNumeric;
  LoadResult r = LoadDataset(path, o);
  EXPECT_EQ(r.parse_warnings, 1u);
  EXPECT_FALSE(r.table.GetColumn("age").cells[0].has_value());
  EXPECT_EQ(*r.table.GetColumn("age").cells[1], "41");
}

TEST(LoadDataset, Errors) {
  TempDir dir("err");
  EXPECT_THROW(LoadDataset(dir.File("missing.csv")), UsageError);
  EXPECT_THROW(LoadDataset(dir.Write("dup.csv", "phone,phone\n1,2\n")), UsageError);
  EXPECT_THROW(LoadDataset(dir.Write("empty.csv", "a,b\n")), UsageError);
  LoadOptions o;
  o.id_column = "id";
  EXPECT_THROW(LoadDataset(dir.Write("dupid.csv", "id,a\n1,x\n1,y\n"), o), UsageError);
}

TEST(LoadDataset, IdColumnAndWriteRoundTrip) {
  TempDir dir("rt");
  auto path = dir.Write("d.csv", "id,name\n7,\"a,b\"\n3,\n");
  LoadOptions o;
  o.id_column = "id";
  Table t = LoadDataset(path, o).table;
  EXPECT_EQ(t.row_ids, (std::vector<int64_t>{7, 3}));
  WriteTable(t, dir.File("out.csv"), ',', "id");
  Table back = LoadDataset(dir.File("out.csv"), o).table;
  EXPECT_EQ(back.row_ids, t.row_ids);
  EXPECT_EQ(back.columns[0].cells, t.columns[0].cells);
}

TEST(Profile, CountsAddUpAndConstantFlag) {
  Table t = MakeTable({"a", "b"}, {{"x", "k"}, {"y", "k"}, {"x", ""}, {"", "k"}, {"z", "k"}});
  ProfileReport p = Profile(t, 2);
  ASSERT_EQ(p.columns.size(), 2u);
  const auto &a = p.columns[0];
  EXPECT_EQ(a.null_count, 1u);
  EXPECT_EQ(a.unique_count, 3u);
  ASSERT_EQ(a.top_k.size(), 2u);
  EXPECT_EQ(a.top_k[0], (std::pair<std::string, size_t>{"x", 2}));
  EXPECT_EQ(a.top_k[1], (std::pair<std::string, size_t>{"y", 1}));  // ties by value
  EXPECT_FALSE(a.constant);
  // histogram: two values seen once, one value seen twice
  EXPECT_EQ(a.count_histogram,
            (std::vector<std::pair<size_t, size_t>>{{1, 2}, {2, 1}}));
  EXPECT_TRUE(p.columns[1].constant);
  EXPECT_NE(p.ToJsonLines().find("\"null_count\":1"), std::string::npos);
}

TEST(Profile, PropertyNullPlusCountsEqualsRows) {
  Rng rng(3);
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < 500; ++i) {
    rows.push_back({rng.Bernoulli(0.2) ? "" : std::to_string(rng.Uniform(30))});
  }
  Table t = MakeTable({"v"}, rows);
  for (int workers : {1, 3}) {
    ProfileReport p = Profile(t, 1000, workers);
    const auto &c = p.columns[0];
    size_t total = c.null_count;
    for (const auto &[v, n] : c.top_k) total += n;
    EXPECT_EQ(total, 500u);
    EXPECT_EQ(c.top_k.size(), c.unique_count);
  }
  EXPECT_THROW(Profile(t, 0), UsageError);
}

TEST(Cleaning, RulesApplyInOrder) {
  Table t = MakeTable({"phone1", "phone2", "name"},
                      {{"(919) 555-0101", "0000000", " Ann "}, {"919.555.0199", "", "Bob"}});
  CleaningRule strip{"phone[0-9]", true, "[^0-9]", CleaningRule::Action::kReplace, ""};
  CleaningRule dummy{"phone[0-9]", true, "0+", CleaningRule::Action::kNullify, ""};
  CleaningRule trim{"name", false, "^\\s+|\\s+$", CleaningRule::Action::kReplace, ""};
  CleaningResult r = ApplyCleaningRules(t, {strip, dummy, trim});
  EXPECT_EQ(*r.table.GetColumn("phone1").cells[0], "9195550101");
  EXPECT_EQ(*r.table.GetColumn("phone1").cells[1], "9195550199");
  EXPECT_FALSE(r.table.GetColumn("phone2").cells[0].has_value());
  EXPECT_EQ(*r.table.GetColumn("name").cells[0], "Ann");
  EXPECT_EQ(r.applied_counts, (std::vector<size_t>{2, 1, 1}));  // cells changed
}

TEST(Cleaning, NullifyNeedsFullMatch) {
  Table t = MakeTable({"p"}, {{"000123"}});
  CleaningRule dummy{"p", false, "0+", CleaningRule::Action::kNullify, ""};
  EXPECT_TRUE(ApplyCleaningRules(t, {dummy}).table.columns[0].cells[0].has_value());
}

TEST(Cleaning, BadPatternThrows) {
  Table t = MakeTable({"p"}, {{"x"}});
  CleaningRule bad{"p", false, "(", CleaningRule::Action::kReplace, ""};
  EXPECT_THROW(ApplyCleaningRules(t, {bad}), UsageError);
}

TEST(Cleaning, DropConstantColumns) {
  Table t = MakeTable({"a", "c", "n"}, {{"1", "US", ""}, {"2", "US", ""}});
  DropResult d = DropConstantColumns(t);
  EXPECT_EQ(d.removed, (std::vector<std::string>{"c", "n"}));
  ASSERT_EQ(d.table.num_columns(), 1u);
  EXPECT_EQ(d.table.columns[0].name, "a");
}

TEST(Dictionary, FirstOccurrenceOrderAndBijection) {
  Table t = MakeTable({"c"}, {{"b"}, {"a"}, {""}, {"b"}, {"c"}});
  EncodedColumn e = EncodeDictionary(t, "c");
  EXPECT_EQ(e.codes, (std::vector<int32_t>{0, 1, kNullCode, 0, 2}));
  for (int32_t code = 0; code < 3; ++code) {
    EXPECT_EQ(*e.dictionary.Lookup(e.dictionary.Decode(code)), code);
  }
  TempDir dir("dict");
  e.dictionary.Save(dir.File("d.csv"));
  Dictionary back = Dictionary::Load(dir.File("d.csv"), "c");
  EXPECT_EQ(back.values(), e.dictionary.values());
}

TEST(Schema, ValidationRules) {
  AttributeSchema ok;
  ok.attributes = {{"name", AttributeKind::kScalar, {"name"}, DataType::kText},
                   {"phone", AttributeKind::kList, {"p1", "p2"}, DataType::kText}};
  EXPECT_NO_THROW(ok.Validate());
  AttributeSchema scalar_two = ok;
  scalar_two.attributes[0].columns = {"a", "b"};
  EXPECT_THROW(scalar_two.Validate(), UsageError);
  AttributeSchema list_one = ok;
  list_one.attributes[1].columns = {"p1"};
  EXPECT_THROW(list_one.Validate(), UsageError);
  AttributeSchema shared = ok;
  shared.attributes[1].columns = {"name", "p2"};
  EXPECT_THROW(shared.Validate(), UsageError);

  Table t = MakeTable({"name", "p1"}, {{"x", "1"}});
  EXPECT_THROW(ok.ValidateAgainst(t), UsageError);
  std::vector<std::string> dropped;
  AttributeSchema r = ok.RestrictTo(t, &dropped);
  EXPECT_TRUE(dropped.empty());
  EXPECT_EQ(r.Get("phone").kind, AttributeKind::kScalar);
  EXPECT_NO_THROW(r.ValidateAgainst(t));
}

TEST(Parallel, ChunksCoverRangeForAnyWorkerCount) {
  for (int workers : {1, 2, 5, 16}) {
    std::vector<int> hits(1003, 0);
    ParallelFor(hits.size(), workers, [&](size_t b, size_t e) {
      for (size_t i = b; i < e; ++i) ++hits[i];
    });
    EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  EXPECT_THROW(ParallelEach(10, 3,
                            [](size_t i) {
                              if (i == 4) throw Error("boom");
                            }),
               Error);
}

TEST(Rng, DeterministicAndDerivedStreamsDiffer) {
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.Next(), b.Next());
  EXPECT_NE(Rng::Derive(5, 0).Next(), Rng::Derive(5, 1).Next());
  Rng c(9);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(c.Uniform(7), 7u);
}

}  // namespace
}  // namespace erkit
