// Copyright 2026 The HybridSybil Authors
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

#include "hybridsybil/io.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "hybridsybil/error.h"
#include "hybridsybil/synthgen.h"

namespace hybridsybil {
namespace {

struct Failure {
  ErrorCode code;
  std::string message;
};

template <typename F>
Failure FailureOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  ADD_FAILURE() << "expected an Error";
  return {ErrorCode::kInternal, ""};
}

std::vector<AccountRecord> Accounts(const std::string& text) {
  std::istringstream in(text);
  return ReadAccountsJsonl(in);
}

TEST(AccountsJsonlTest, ParsesFieldsLabelsAndNulls) {
  const auto records = Accounts(
      R"({"account_id":"a","friend_count":12,"label":"sybil"})" "\n"
      "\n"
      R"({"account_id":"b","group_count":null,"post_count":3.0})" "\n");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].account_id, "a");
  EXPECT_EQ(records[0].counts[*FeatureIndex("friend_count")], 12u);
  EXPECT_FALSE(records[0].counts[*FeatureIndex("active_days")].has_value());
  EXPECT_EQ(records[0].label, Label::kSybil);
  EXPECT_EQ(records[1].label, Label::kUnknown);
  EXPECT_FALSE(records[1].counts[*FeatureIndex("group_count")].has_value());
  EXPECT_EQ(records[1].counts[*FeatureIndex("post_count")], 3u);
}

TEST(AccountsJsonlTest, ErrorsNameTheLine) {
  const struct {
    std::string text;
    std::string line;
  } cases[] = {
      {"{\"account_id\":\"a\"}\n{\"friend_count\":1}\n", "line 2: "},
      {"{\"account_id\":\"\"}\n", "line 1: "},
      {"{\"account_id\":\"a\"}\n\n{not json\n", "line 3: "},
      {"[1,2]\n", "line 1: "},
      {"{\"account_id\":\"a\",\"friend_count\":-1}\n", "line 1: "},
      {"{\"account_id\":\"a\",\"friend_count\":1.5}\n", "line 1: "},
      {"{\"account_id\":\"a\",\"friend_count\":\"7\"}\n", "line 1: "},
      {"{\"account_id\":\"a\",\"followers\":3}\n", "line 1: "},
      {"{\"account_id\":\"a\",\"label\":\"bot\"}\n", "line 1: "},
      {"{\"account_id\":\"a\"}\n{\"account_id\":\"a\"}\n", "line 2: "},
  };
  for (const auto& c : cases) {
    const Failure f = FailureOf([&] { Accounts(c.text); });
    EXPECT_EQ(f.code, ErrorCode::kMalformedRecord) << c.text;
    EXPECT_EQ(f.message.rfind(c.line, 0), 0u) << f.message;
  }
}

TEST(AccountsJsonlTest, EmptyInputIsAnError) {
  EXPECT_EQ(FailureOf([] { Accounts(""); }).code, ErrorCode::kEmptyDataset);
  EXPECT_EQ(FailureOf([] { Accounts("\n\n"); }).code, ErrorCode::kEmptyDataset);
}

TEST(AccountsJsonlTest, RoundTrip) {
  const Dataset ds = Generate({.n_benign = 20, .n_sybil = 20});
  std::vector<AccountRecord> accounts = ds.accounts;
  accounts[3].counts[5].reset();
  std::ostringstream out;
  WriteAccountsJsonl(out, accounts);
  const auto back = Accounts(out.str());
  ASSERT_EQ(back.size(), accounts.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].account_id, accounts[i].account_id);
    EXPECT_EQ(back[i].counts, accounts[i].counts);
    EXPECT_EQ(back[i].label, accounts[i].label);
  }
}

TEST(FeaturesCsvTest, RoundTripIsBitExact) {
  std::vector<FeatureVector> vectors(3);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    vectors[i].account_id = "v" + std::to_string(i);
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      vectors[i].values[f] = (f + 1) / 7.0 - static_cast<double>(i) * 1e-300;
    }
  }
  std::ostringstream out;
  WriteFeaturesCsv(out, vectors);
  EXPECT_EQ(out.str().substr(0, 16), "account_id,f0,f1");
  std::istringstream in(out.str());
  const auto back = ReadFeaturesCsv(in);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back[i].account_id, vectors[i].account_id);
    EXPECT_EQ(back[i].values, vectors[i].values);
  }
}

TEST(FeaturesCsvTest, Errors) {
  std::string header = "account_id";
  std::string row = "a";
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    header += ",f" + std::to_string(f);
    row += ",1";
  }
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return ReadFeaturesCsv(in);
  };
  EXPECT_EQ(read(header + "\n" + row + "\n").size(), 1u);
  EXPECT_EQ(FailureOf([&] { read(header + "\n"); }).code, ErrorCode::kEmptyDataset);
  const Failure short_row = FailureOf([&] { read(header + "\na,1,2\n"); });
  EXPECT_EQ(short_row.code, ErrorCode::kMalformedData);
  EXPECT_EQ(short_row.message.rfind("line 2: ", 0), 0u);
  std::string bad = row;
  bad.back() = 'x';
  EXPECT_EQ(FailureOf([&] { read(header + "\n" + bad + "\n"); }).code,
            ErrorCode::kMalformedData);
  EXPECT_EQ(FailureOf([&] { read(row + "\n"); }).code, ErrorCode::kMalformedData);
}

TEST(EdgesTsvTest, ParsesAndRoundTrips) {
  std::istringstream in("# header\nb\ta\t3\n\nc\ta\t0\r\n");
  const auto edges = ReadEdgesTsv(in);
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(edges[0].u, "b");
  EXPECT_EQ(edges[0].v, "a");
  EXPECT_EQ(edges[0].mutual_friend_count, 3u);
  EXPECT_EQ(edges[1].mutual_friend_count, 0u);
  std::ostringstream out;
  WriteEdgesTsv(out, edges);
  std::istringstream again(out.str());
  const auto back = ReadEdgesTsv(again);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].u, "c");
}

TEST(EdgesTsvTest, Errors) {
  for (const std::string text : {"a\tb\n", "a\tb\t-1\n", "a\tb\tx\n", "a\ta\t1\n", "\tb\t1\n"}) {
    std::istringstream in("a\tz\t1\n" + text);
    const Failure f = FailureOf([&] { ReadEdgesTsv(in); });
    EXPECT_EQ(f.code, ErrorCode::kMalformedEdge) << text;
    EXPECT_EQ(f.message.rfind("line 2: ", 0), 0u) << f.message;
  }
}

TEST(LabelsTsvTest, ParsesAndRejectsConflicts) {
  std::istringstream in("# node\tlabel\na\tbenign\nb\tsybil\na\tbenign\n");
  const auto labels = ReadLabelsTsv(in);
  EXPECT_EQ(labels.size(), 2u);
  EXPECT_EQ(labels.at("b"), Label::kSybil);
  std::istringstream conflict("a\tbenign\na\tsybil\n");
  EXPECT_EQ(FailureOf([&] { ReadLabelsTsv(conflict); }).code, ErrorCode::kMalformedData);
  std::istringstream bad("a\tfriend\n");
  const Failure f = FailureOf([&] { ReadLabelsTsv(bad); });
  EXPECT_EQ(f.code, ErrorCode::kMalformedData);
  EXPECT_EQ(f.message.rfind("line 1: ", 0), 0u);
}

TEST(PriorsCsvTest, RoundTripIsBitExact) {
  const std::map<std::string, double> priors = {{"a", 0.1}, {"b", 1.0 / 3.0}, {"c", 1e-300}};
  std::ostringstream out;
  WritePriorsCsv(out, priors);
  std::istringstream in(out.str());
  EXPECT_EQ(ReadPriorsCsv(in), priors);
  std::istringstream no_header("a,0.5\n");
  EXPECT_EQ(FailureOf([&] { ReadPriorsCsv(no_header); }).code, ErrorCode::kMalformedData);
  std::istringstream dup("account_id,score\na,0.5\na,0.5\n");
  EXPECT_EQ(FailureOf([&] { ReadPriorsCsv(dup); }).code, ErrorCode::kMalformedData);
}

TEST(ScoresCsvTest, FlagsUnreachableUsers) {
  const std::vector<std::string> extra = {"solo"};
  const LabeledSocialGraph g = BuildGraph(std::vector<EdgeObservation>{{"a", "b", 1}},
                                          {{"a", Label::kSybil}}, {}, extra);
  ScoreVector s;
  s.scores = {0.25, 1.0 / 3.0, 0.5};
  s.unreachable = {false, false, true};
  s.iteration_count = 7;
  std::ostringstream out;
  WriteScoresCsv(out, g, s);
  EXPECT_EQ(out.str(),
            "account_id,score,iterations,flag\n"
            "a,0.25,7,ok\n"
            "b,0.333333333,7,ok\n"
            "solo,0.5,7,unreachable\n");
}

TEST(FileTest, MissingFileIsAnIoError) {
  EXPECT_EQ(FailureOf([] { ReadFile("/nonexistent/dir/file"); }).code, ErrorCode::kIo);
  EXPECT_EQ(FailureOf([] { WriteFile("/nonexistent/dir/file", "x"); }).code, ErrorCode::kIo);
  const auto path = std::filesystem::temp_directory_path() / "hybridsybil_io_test.txt";
  WriteFile(path, "abc\n");
  EXPECT_EQ(ReadFile(path), "abc\n");
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace hybridsybil
