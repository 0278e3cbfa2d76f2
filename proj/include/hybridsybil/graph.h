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

#ifndef HYBRIDSYBIL_GRAPH_H_
#define HYBRIDSYBIL_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hybridsybil/label.h"

namespace hybridsybil {

using NodeIndex = std::size_t;

struct EdgeObservation {
  std::string u;
  std::string v;
  std::uint64_t mutual_friend_count = 0;
};

struct Neighbor {
  NodeIndex node;
  double weight;
};

struct GraphOptions {
  // When true, weights are exactly count / M and zero-count edges vanish.
  // Otherwise a zero-count edge keeps the floor weight 1 / (M + 1).
  bool strict_weights = false;
};

// Undirected weighted social graph augmented with the two label nodes.
//
// User nodes occupy indices [0, num_users()) in lexicographic id order, so
// the layout does not depend on the order observations arrive in. The
// benign label node l_b and the sybil label node l_s follow at indices
// num_users() and num_users() + 1.
class LabeledSocialGraph {
 public:
  std::size_t num_users() const { return ids_.size(); }
  std::size_t num_nodes() const { return ids_.size() + 2; }
  NodeIndex benign_label_node() const { return ids_.size(); }
  NodeIndex sybil_label_node() const { return ids_.size() + 1; }
  bool is_label_node(NodeIndex node) const { return node >= ids_.size(); }

  const std::string& id(NodeIndex user) const { return ids_[user]; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<NodeIndex> Find(const std::string& id) const;

  std::span<const Neighbor> neighbors(NodeIndex node) const {
    return adjacency_[node];
  }
  // Sum of incident edge weights, label edges included.
  double degree_weight(NodeIndex node) const { return degree_weights_[node]; }
  Label label(NodeIndex user) const { return labels_[user]; }

  // Weight of the edge (u, v), zero when absent.
  double weight(NodeIndex u, NodeIndex v) const;

  // Connects a user to its label node with weight 1. Throws kMalformedEdge
  // if the user already carries a label edge.
  void AddLabelEdge(NodeIndex user, Label label);

 private:
  friend LabeledSocialGraph BuildGraph(
      std::span<const EdgeObservation>, const std::map<std::string, Label>&,
      const GraphOptions&, std::span<const std::string>);

  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> degree_weights_;
  std::vector<Label> labels_;
};

// Builds the label-augmented graph. Edge weight is the mutual-friend count
// divided by the global maximum count M; if M is zero every edge gets weight
// 1. Duplicate pairs (in either orientation) keep their largest count.
// Every node in `labels` and `extra_nodes` is added even without edges.
// Throws kMalformedEdge on self-loops or empty endpoints.
LabeledSocialGraph BuildGraph(std::span<const EdgeObservation> observations,
                              const std::map<std::string, Label>& labels,
                              const GraphOptions& options = {},
                              std::span<const std::string> extra_nodes = {});

// w_uv / sum_t w_ut. Throws kIsolatedNode when u has no incident weight.
double TransitionProbability(const LabeledSocialGraph& graph, NodeIndex u,
                             NodeIndex v);

// Partition of user nodes by user-user edges. Components are sorted by their
// smallest member; members are ascending.
std::vector<std::vector<NodeIndex>> ConnectedComponents(
    const LabeledSocialGraph& graph);

// True for every user node whose component holds no label edge, which
// includes isolated nodes. A walk from such a node never reaches l_b or l_s.
std::vector<bool> UnreachableUsers(const LabeledSocialGraph& graph);

}  // namespace hybridsybil

#endif  // HYBRIDSYBIL_GRAPH_H_
