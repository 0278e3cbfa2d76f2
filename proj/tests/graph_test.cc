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

#include "hybridsybil/graph.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "hybridsybil/error.h"
#include "oracles.h"

namespace hybridsybil {
namespace {

using testing::RandomLabeledGraph;

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInternal;
}

NodeIndex At(const LabeledSocialGraph& g, const std::string& id) {
  auto idx = g.Find(id);
  EXPECT_TRUE(idx.has_value()) << id;
  return idx.value_or(0);
}

void ExpectInvariants(const LabeledSocialGraph& g) {
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    double sum = 0.0;
    for (const Neighbor& nb : g.neighbors(u)) {
      EXPECT_NE(nb.node, u) << "self-loop";
      EXPECT_EQ(g.weight(nb.node, u), nb.weight) << "asymmetric edge";
      if (g.is_label_node(u) || g.is_label_node(nb.node)) {
        EXPECT_EQ(nb.weight, 1.0);
      } else {
        EXPECT_GT(nb.weight, 0.0);
        EXPECT_LE(nb.weight, 1.0);
      }
      sum += nb.weight;
    }
    EXPECT_NEAR(g.degree_weight(u), sum, 1e-12);
  }
  EXPECT_EQ(g.weight(g.benign_label_node(), g.sybil_label_node()), 0.0);
}

TEST(BuildGraphTest, WorkedExample) {
  const std::vector<EdgeObservation> obs = {{"a", "b", 5}, {"b", "c", 10}};
  const LabeledSocialGraph g = BuildGraph(obs, {{"a", Label::kBenign}});
  ASSERT_EQ(g.num_users(), 3u);
  const NodeIndex a = At(g, "a"), b = At(g, "b"), c = At(g, "c");
  EXPECT_EQ(g.weight(a, b), 0.5);
  EXPECT_EQ(g.weight(b, c), 1.0);
  EXPECT_EQ(g.weight(g.benign_label_node(), a), 1.0);
  EXPECT_EQ(g.weight(g.sybil_label_node(), a), 0.0);
  EXPECT_EQ(g.degree_weight(b), 1.5);
  EXPECT_EQ(g.degree_weight(a), 1.5);
  EXPECT_EQ(g.label(a), Label::kBenign);
  EXPECT_EQ(g.label(c), Label::kUnknown);
  ExpectInvariants(g);
}

TEST(BuildGraphTest, EqualCountsGiveUnitWeights) {
  const std::vector<EdgeObservation> obs = {{"a", "b", 4}, {"b", "c", 4}, {"c", "a", 4}};
  const LabeledSocialGraph g = BuildGraph(obs, {});
  for (NodeIndex u = 0; u < g.num_users(); ++u) {
    for (const Neighbor& nb : g.neighbors(u)) EXPECT_EQ(nb.weight, 1.0);
  }
}

TEST(BuildGraphTest, NoLabelsLeavesLabelNodesIsolated) {
  const LabeledSocialGraph g = BuildGraph(std::vector<EdgeObservation>{{"a", "b", 1}}, {});
  EXPECT_TRUE(g.neighbors(g.benign_label_node()).empty());
  EXPECT_TRUE(g.neighbors(g.sybil_label_node()).empty());
  EXPECT_EQ(g.degree_weight(g.benign_label_node()), 0.0);
}

TEST(BuildGraphTest, AllZeroCountsGiveUniformWeights) {
  const std::vector<EdgeObservation> obs = {{"a", "b", 0}, {"b", "c", 0}};
  const LabeledSocialGraph g = BuildGraph(obs, {});
  EXPECT_EQ(g.weight(At(g, "a"), At(g, "b")), 1.0);
  EXPECT_EQ(g.weight(At(g, "b"), At(g, "c")), 1.0);
}

TEST(BuildGraphTest, ZeroCountEdgeGetsFloorUnlessStrict) {
  const std::vector<EdgeObservation> obs = {{"a", "b", 0}, {"b", "c", 4}};
  const LabeledSocialGraph g = BuildGraph(obs, {});
  EXPECT_DOUBLE_EQ(g.weight(At(g, "a"), At(g, "b")), 1.0 / 5.0);
  EXPECT_EQ(g.weight(At(g, "b"), At(g, "c")), 1.0);

  const LabeledSocialGraph strict = BuildGraph(obs, {}, {.strict_weights = true});
  EXPECT_EQ(strict.weight(At(strict, "a"), At(strict, "b")), 0.0);
  EXPECT_TRUE(strict.neighbors(At(strict, "a")).empty());
  EXPECT_EQ(ConnectedComponents(strict).size(), 2u);
}

TEST(BuildGraphTest, DuplicatesMergeByMaxInEitherOrientation) {
  const std::vector<EdgeObservation> obs = {
      {"a", "b", 2}, {"b", "a", 8}, {"a", "b", 3}, {"b", "c", 4}};
  const LabeledSocialGraph g = BuildGraph(obs, {});
  EXPECT_EQ(g.neighbors(At(g, "a")).size(), 1u);
  EXPECT_EQ(g.weight(At(g, "a"), At(g, "b")), 1.0);
  EXPECT_EQ(g.weight(At(g, "b"), At(g, "c")), 0.5);
}

TEST(BuildGraphTest, MalformedEdges) {
  EXPECT_EQ(CodeOf([] { BuildGraph(std::vector<EdgeObservation>{{"a", "a", 1}}, {}); }),
            ErrorCode::kMalformedEdge);
  EXPECT_EQ(CodeOf([] { BuildGraph(std::vector<EdgeObservation>{{"", "a", 1}}, {}); }),
            ErrorCode::kMalformedEdge);
}

TEST(BuildGraphTest, LabelOnlyAndExtraNodesAreAdded) {
  const std::vector<std::string> extra = {"loner"};
  const LabeledSocialGraph g = BuildGraph(std::vector<EdgeObservation>{{"a", "b", 1}},
                                          {{"z", Label::kSybil}}, {}, extra);
  EXPECT_EQ(g.num_users(), 4u);
  EXPECT_EQ(g.degree_weight(At(g, "z")), 1.0);
  EXPECT_EQ(g.degree_weight(At(g, "loner")), 0.0);
}

TEST(BuildGraphTest, PermutationInvariant) {
  const auto data = RandomLabeledGraph({.users = 80, .edge_prob = 0.08, .seed = 4});
  const LabeledSocialGraph reference = BuildGraph(data.edges, data.labels);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto shuffled = data.edges;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto& e : shuffled) {
      if (rng() % 2) std::swap(e.u, e.v);
    }
    const LabeledSocialGraph g = BuildGraph(shuffled, data.labels);
    ASSERT_EQ(g.ids(), reference.ids());
    for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
      const auto a = g.neighbors(u);
      const auto b = reference.neighbors(u);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].node, b[i].node);
        EXPECT_EQ(a[i].weight, b[i].weight);
      }
      EXPECT_EQ(g.degree_weight(u), reference.degree_weight(u));
    }
  }
}

TEST(BuildGraphTest, RandomGraphsSatisfyInvariants) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto data = RandomLabeledGraph({.users = 60, .edge_prob = 0.1, .seed = seed});
    ExpectInvariants(BuildGraph(data.edges, data.labels));
  }
}

TEST(AddLabelEdgeTest, IncreasesDegreeByExactlyOne) {
  const auto data = RandomLabeledGraph({.users = 30, .seed = 6});
  LabeledSocialGraph g = BuildGraph(data.edges, {});
  for (NodeIndex u = 0; u < g.num_users(); u += 3) {
    const double before = g.degree_weight(u);
    g.AddLabelEdge(u, u % 2 ? Label::kSybil : Label::kBenign);
    EXPECT_EQ(g.degree_weight(u), before + 1.0);
  }
  ExpectInvariants(g);
  EXPECT_EQ(CodeOf([&] { g.AddLabelEdge(0, Label::kSybil); }), ErrorCode::kMalformedEdge);
}

TEST(TransitionProbabilityTest, UniformAndProportional) {
  const LabeledSocialGraph equal =
      BuildGraph(std::vector<EdgeObservation>{{"u", "a", 2}, {"u", "b", 2}}, {});
  const NodeIndex u = At(equal, "u");
  EXPECT_EQ(TransitionProbability(equal, u, At(equal, "a")), 0.5);
  EXPECT_EQ(TransitionProbability(equal, u, At(equal, "b")), 0.5);

  const LabeledSocialGraph skewed =
      BuildGraph(std::vector<EdgeObservation>{{"u", "a", 1}, {"u", "b", 3}}, {});
  const NodeIndex su = At(skewed, "u");
  EXPECT_DOUBLE_EQ(TransitionProbability(skewed, su, At(skewed, "a")), 0.25);
  EXPECT_DOUBLE_EQ(TransitionProbability(skewed, su, At(skewed, "b")), 0.75);
}

TEST(TransitionProbabilityTest, RowsSumToOneAndMatchRecomputation) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto data = RandomLabeledGraph({.users = 70, .edge_prob = 0.1, .seed = seed});
    const LabeledSocialGraph g = BuildGraph(data.edges, data.labels);
    for (NodeIndex u = 0; u < g.num_users(); ++u) {
      double total_weight = 0.0;
      for (const Neighbor& nb : g.neighbors(u)) total_weight += nb.weight;
      double sum = 0.0;
      for (const Neighbor& nb : g.neighbors(u)) {
        const double p = TransitionProbability(g, u, nb.node);
        EXPECT_NEAR(p, nb.weight / total_weight, 1e-15);
        sum += p;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(TransitionProbabilityTest, IsolatedNodeIsAnError) {
  const std::vector<std::string> extra = {"alone"};
  const LabeledSocialGraph g = BuildGraph({}, {}, {}, extra);
  EXPECT_EQ(CodeOf([&] { TransitionProbability(g, 0, 1); }), ErrorCode::kIsolatedNode);
}

TEST(ConnectedComponentsTest, TwoTriangles) {
  const std::vector<EdgeObservation> obs = {{"a", "b", 1}, {"b", "c", 1}, {"c", "a", 1},
                                            {"x", "y", 1}, {"y", "z", 1}, {"z", "x", 1}};
  // Label edges must not merge the triangles.
  const LabeledSocialGraph g =
      BuildGraph(obs, {{"a", Label::kBenign}, {"x", Label::kBenign}});
  const auto components = ConnectedComponents(g);
  ASSERT_EQ(components.size(), 2u);
  EXPECT_EQ(components[0].size(), 3u);
  EXPECT_EQ(components[1].size(), 3u);
}

TEST(ConnectedComponentsTest, NoEdgesGivesSingletons) {
  const std::vector<std::string> ids = {"a", "b", "c", "d", "e"};
  const LabeledSocialGraph g = BuildGraph({}, {}, {}, ids);
  const auto components = ConnectedComponents(g);
  ASSERT_EQ(components.size(), 5u);
  for (const auto& c : components) EXPECT_EQ(c.size(), 1u);
}

// Independent oracle: repeated relaxation of a component id over a dense
// adjacency matrix until nothing changes.
std::vector<std::size_t> BruteForceComponentIds(const LabeledSocialGraph& g) {
  const std::size_t n = g.num_users();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = 0; v < n; ++v) adj[u][v] = g.weight(u, v) > 0.0;
  }
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeIndex u = 0; u < n; ++u) {
      for (NodeIndex v = 0; v < n; ++v) {
        if (adj[u][v] && id[v] < id[u]) {
          id[u] = id[v];
          changed = true;
        }
      }
    }
  }
  return id;
}

TEST(ConnectedComponentsTest, MatchesBruteForceOnSparseRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto data = RandomLabeledGraph(
        {.users = 60, .edge_prob = 0.02, .seed = seed, .backbone = false});
    const LabeledSocialGraph g = BuildGraph(data.edges, data.labels);
    const auto oracle = BruteForceComponentIds(g);
    const auto components = ConnectedComponents(g);
    std::set<NodeIndex> covered;
    for (const auto& c : components) {
      for (NodeIndex u : c) {
        EXPECT_EQ(oracle[u], oracle[c.front()]);
        EXPECT_TRUE(covered.insert(u).second);
      }
    }
    EXPECT_EQ(covered.size(), g.num_users());
    EXPECT_EQ(components.size(),
              std::set<std::size_t>(oracle.begin(), oracle.end()).size());
  }
}

TEST(UnreachableUsersTest, FlagsComponentsWithoutLabels) {
  const std::vector<EdgeObservation> obs = {{"a", "b", 1}, {"x", "y", 1}};
  const std::vector<std::string> extra = {"solo"};
  const LabeledSocialGraph g = BuildGraph(obs, {{"a", Label::kSybil}}, {}, extra);
  const auto flags = UnreachableUsers(g);
  EXPECT_FALSE(flags[At(g, "a")]);
  EXPECT_FALSE(flags[At(g, "b")]);
  EXPECT_TRUE(flags[At(g, "x")]);
  EXPECT_TRUE(flags[At(g, "y")]);
  EXPECT_TRUE(flags[At(g, "solo")]);
}

}  // namespace
}  // namespace hybridsybil
