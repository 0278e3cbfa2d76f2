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

#include <algorithm>
#include <set>
#include <utility>

#include "hybridsybil/error.h"

namespace hybridsybil {
namespace {

std::pair<std::string, std::string> CanonicalPair(const std::string& a,
                                                  const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

std::optional<NodeIndex> LabeledSocialGraph::Find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double LabeledSocialGraph::weight(NodeIndex u, NodeIndex v) const {
  for (const Neighbor& n : adjacency_[u]) {
    if (n.node == v) return n.weight;
  }
  return 0.0;
}

void LabeledSocialGraph::AddLabelEdge(NodeIndex user, Label label) {
  if (is_label_node(user) || !IsKnown(label)) {
    throw Error(ErrorCode::kMalformedEdge,
                "label edges join a user to l_b or l_s");
  }
  if (IsKnown(labels_[user])) {
    throw Error(ErrorCode::kMalformedEdge,
                "user '" + ids_[user] + "' already has a label edge");
  }
  const NodeIndex label_node =
      label == Label::kBenign ? benign_label_node() : sybil_label_node();
  adjacency_[user].push_back({label_node, 1.0});
  adjacency_[label_node].push_back({user, 1.0});
  degree_weights_[user] += 1.0;
  degree_weights_[label_node] += 1.0;
  labels_[user] = label;
}

LabeledSocialGraph BuildGraph(std::span<const EdgeObservation> observations,
                              const std::map<std::string, Label>& labels,
                              const GraphOptions& options,
                              std::span<const std::string> extra_nodes) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> merged;
  std::set<std::string> ids;
  for (const EdgeObservation& obs : observations) {
    if (obs.u.empty() || obs.v.empty()) {
      throw Error(ErrorCode::kMalformedEdge, "edge with an empty endpoint");
    }
    if (obs.u == obs.v) {
      throw Error(ErrorCode::kMalformedEdge, "self-loop on '" + obs.u + "'");
    }
    auto [it, inserted] =
        merged.try_emplace(CanonicalPair(obs.u, obs.v), obs.mutual_friend_count);
    if (!inserted) it->second = std::max(it->second, obs.mutual_friend_count);
    ids.insert(obs.u);
    ids.insert(obs.v);
  }
  for (const auto& [id, label] : labels) {
    if (id.empty()) {
      throw Error(ErrorCode::kMalformedEdge, "label for an empty node id");
    }
    ids.insert(id);
  }
  for (const std::string& id : extra_nodes) {
    if (!id.empty()) ids.insert(id);
  }

  LabeledSocialGraph graph;
  graph.ids_.assign(ids.begin(), ids.end());
  const std::size_t n = graph.ids_.size();
  graph.index_.reserve(n);
  for (NodeIndex i = 0; i < n; ++i) graph.index_.emplace(graph.ids_[i], i);
  graph.adjacency_.resize(n + 2);
  graph.degree_weights_.assign(n + 2, 0.0);
  graph.labels_.assign(n, Label::kUnknown);

  std::uint64_t max_count = 0;
  for (const auto& [pair, count] : merged) max_count = std::max(max_count, count);
  const double m = static_cast<double>(max_count);

  for (const auto& [pair, count] : merged) {
    double w = 1.0;
    if (max_count > 0) {
      if (count > 0) {
        w = static_cast<double>(count) / m;
      } else if (options.strict_weights) {
        continue;
      } else {
        w = 1.0 / (m + 1.0);
      }
    }
    const NodeIndex u = graph.index_.at(pair.first);
    const NodeIndex v = graph.index_.at(pair.second);
    graph.adjacency_[u].push_back({v, w});
    graph.adjacency_[v].push_back({u, w});
  }
  for (const auto& [id, label] : labels) {
    if (IsKnown(label)) graph.AddLabelEdge(graph.index_.at(id), label);
  }
  // Degree sums are taken in adjacency order, which is fixed by the sorted
  // pair map, so rebuilding from a shuffled list gives identical bits.
  for (NodeIndex u = 0; u < n + 2; ++u) {
    double sum = 0.0;
    for (const Neighbor& nb : graph.adjacency_[u]) sum += nb.weight;
    graph.degree_weights_[u] = sum;
  }
  return graph;
}

double TransitionProbability(const LabeledSocialGraph& graph, NodeIndex u,
                             NodeIndex v) {
  const double degree = graph.degree_weight(u);
  if (!(degree > 0.0)) {
    throw Error(ErrorCode::kIsolatedNode,
                "node " + std::to_string(u) + " has no incident weight");
  }
  return graph.weight(u, v) / degree;
}

std::vector<std::vector<NodeIndex>> ConnectedComponents(
    const LabeledSocialGraph& graph) {
  const std::size_t n = graph.num_users();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<NodeIndex>> components;
  std::vector<NodeIndex> stack;
  for (NodeIndex start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<NodeIndex> component;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      const NodeIndex u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (const Neighbor& nb : graph.neighbors(u)) {
        if (graph.is_label_node(nb.node) || seen[nb.node]) continue;
        seen[nb.node] = true;
        stack.push_back(nb.node);
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

std::vector<bool> UnreachableUsers(const LabeledSocialGraph& graph) {
  std::vector<bool> unreachable(graph.num_users(), false);
  for (const auto& component : ConnectedComponents(graph)) {
    const bool labeled = std::any_of(
        component.begin(), component.end(),
        [&](NodeIndex u) { return IsKnown(graph.label(u)); });
    if (labeled) continue;
    for (NodeIndex u : component) unreachable[u] = true;
  }
  return unreachable;
}

}  // namespace hybridsybil
