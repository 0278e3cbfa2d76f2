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

#include "hybridsybil/synthgen.h"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "hybridsybil/error.h"
#include "hybridsybil/io.h"
#include "hybridsybil/propagation.h"

namespace hybridsybil {
namespace {

bool IsSybilId(const std::string& id) { return id.front() == 's'; }

std::string Serialize(const Dataset& ds) {
  std::ostringstream out;
  WriteAccountsJsonl(out, ds.accounts);
  WriteEdgesTsv(out, ds.edges);
  WriteLabelsTsv(out, ds.labels);
  WriteLabelsTsv(out, ds.ground_truth);
  return out.str();
}

std::size_t CountAttackEdges(const Dataset& ds) {
  std::size_t count = 0;
  for (const auto& e : ds.edges) count += IsSybilId(e.u) != IsSybilId(e.v);
  return count;
}

TEST(GenerateTest, FullDensityGivesTwoCliques) {
  const Dataset ds = Generate({.n_benign = 5, .n_sybil = 5, .intra_edge_prob = 1.0,
                               .attack_edges = 0, .label_fraction = 0.4});
  EXPECT_EQ(ds.edges.size(), 20u);
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& e : ds.edges) {
    EXPECT_EQ(IsSybilId(e.u), IsSybilId(e.v));
    pairs.insert(std::minmax(e.u, e.v));
  }
  EXPECT_EQ(pairs.size(), 20u);
  std::size_t benign = 0, sybil = 0;
  for (const auto& [id, label] : ds.labels) {
    EXPECT_EQ(label, IsSybilId(id) ? Label::kSybil : Label::kBenign);
    (IsSybilId(id) ? sybil : benign)++;
  }
  EXPECT_EQ(benign, 2u);
  EXPECT_EQ(sybil, 2u);
  EXPECT_EQ(ds.accounts.size(), 10u);
  EXPECT_EQ(ds.ground_truth.size(), 10u);
}

TEST(GenerateTest, NoAttackEdgesDisconnectsRegions) {
  const Dataset ds = Generate({.n_benign = 60, .n_sybil = 60, .intra_edge_prob = 0.1,
                               .attack_edges = 0});
  const LabeledSocialGraph g = BuildGraph(ds.edges, {});
  for (const auto& component : ConnectedComponents(g)) {
    std::set<bool> sides;
    for (NodeIndex u : component) sides.insert(IsSybilId(g.id(u)));
    EXPECT_EQ(sides.size(), 1u);
  }
}

TEST(GenerateTest, ByteIdenticalAcrossRuns) {
  const SynthConfig config{.n_benign = 200, .n_sybil = 200, .intra_edge_prob = 0.05,
                           .attack_edges = 20, .label_fraction = 0.2, .rng_seed = 42};
  const std::string first = Serialize(Generate(config));
  EXPECT_EQ(first, Serialize(Generate(config)));
  SynthConfig other = config;
  other.rng_seed = 43;
  EXPECT_NE(first, Serialize(Generate(other)));
}

TEST(GenerateTest, WellFormedEdgesAndExactAttackCount) {
  for (std::uint64_t attack : {0ull, 1ull, 20ull, 150ull, 2400ull, 2500ull}) {
    const Dataset ds = Generate({.n_benign = 50, .n_sybil = 50, .attack_edges = attack,
                                 .rng_seed = attack + 1});
    EXPECT_EQ(CountAttackEdges(ds), attack);
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& e : ds.edges) {
      EXPECT_NE(e.u, e.v);
      EXPECT_TRUE(pairs.insert(std::minmax(e.u, e.v)).second) << e.u << " " << e.v;
      if (IsSybilId(e.u) != IsSybilId(e.v)) EXPECT_LE(e.mutual_friend_count, 1u);
    }
  }
}

TEST(GenerateTest, IntraRegionCountsFollowScale) {
  const Dataset ds = Generate({.n_benign = 40, .n_sybil = 40, .mutual_friend_scale = 8});
  for (const auto& e : ds.edges) {
    if (IsSybilId(e.u) != IsSybilId(e.v)) continue;
    EXPECT_GE(e.mutual_friend_count, 4u);
    EXPECT_LE(e.mutual_friend_count, 8u);
  }
}

TEST(GenerateTest, LabelsAgreeWithGroundTruth) {
  const Dataset ds = Generate({.label_fraction = 0.3});
  EXPECT_EQ(ds.labels.size(), 120u);
  for (const auto& [id, label] : ds.labels) EXPECT_EQ(ds.ground_truth.at(id), label);
  for (const auto& a : ds.accounts) {
    auto it = ds.labels.find(a.account_id);
    EXPECT_EQ(a.label, it == ds.labels.end() ? Label::kUnknown : it->second);
    for (const auto& c : a.counts) EXPECT_TRUE(c.has_value());
  }
}

TEST(GenerateTest, FeatureMeansTrackTheTable) {
  const Dataset ds = Generate({.n_benign = 2000, .n_sybil = 2000, .intra_edge_prob = 0.001,
                               .feature_noise = 0.5});
  const FeatureMeans& means = SyntheticFeatureMeans();
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    double benign = 0.0, sybil = 0.0;
    for (const auto& a : ds.accounts) {
      (IsSybilId(a.account_id) ? sybil : benign) += static_cast<double>(*a.counts[f]);
    }
    // Standard error of a Gamma-Poisson mean over 2000 draws is below 2.5%
    // of the mean for every tabulated value.
    EXPECT_NEAR(benign / 2000, means.benign[f], 0.1 * means.benign[f] + 0.2) << f;
    EXPECT_NEAR(sybil / 2000, means.sybil[f], 0.1 * means.sybil[f] + 0.2) << f;
  }
}

TEST(GenerateTest, InfeasibleConfigIsAnError) {
  auto code = [](const SynthConfig& c) {
    try {
      Generate(c);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  EXPECT_EQ(code({.n_benign = 3, .n_sybil = 3, .attack_edges = 10}), ErrorCode::kConfig);
  EXPECT_EQ(code({.n_benign = 0}), ErrorCode::kConfig);
  EXPECT_EQ(code({.intra_edge_prob = 0.0}), ErrorCode::kConfig);
  EXPECT_EQ(code({.label_fraction = 0.0}), ErrorCode::kConfig);
  EXPECT_EQ(code({.mutual_friend_scale = 0}), ErrorCode::kConfig);
  EXPECT_EQ(code({.feature_noise = -1.0}), ErrorCode::kConfig);
}

TEST(GenerateTest, SeparatedRegionsWithFullLabelsHitTheirOwnSide) {
  const Dataset ds = Generate({.n_benign = 80, .n_sybil = 80, .intra_edge_prob = 0.08,
                               .attack_edges = 0, .label_fraction = 1.0});
  const LabeledSocialGraph g = BuildGraph(ds.edges, ds.labels);
  const ScoreVector exact = ExactHittingProbabilities(g);
  for (NodeIndex u = 0; u < g.num_users(); ++u) {
    EXPECT_NEAR(exact.scores[u], IsSybilId(g.id(u)) ? 1.0 : 0.0, 1e-12) << g.id(u);
  }
}

}  // namespace
}  // namespace hybridsybil
