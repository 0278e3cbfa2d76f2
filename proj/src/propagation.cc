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

#include "hybridsybil/propagation.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "hybridsybil/error.h"

namespace hybridsybil {
namespace {

double Boundary(const LabeledSocialGraph& graph, NodeIndex label_node) {
  return label_node == graph.sybil_label_node()
             ? ScoreVector::kSybilBoundary
             : ScoreVector::kBenignBoundary;
}

// SplitMix64 finalizer; spreads a (seed, node) pair over the seed space.
std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void RequireReachable(const LabeledSocialGraph& graph,
                      const std::vector<bool>& unreachable) {
  for (NodeIndex u = 0; u < graph.num_users(); ++u) {
    if (unreachable[u]) {
      throw Error(ErrorCode::kUnreachableNode,
                  "user '" + graph.id(u) + "' has no path to a label node");
    }
  }
}

}  // namespace

double ScoreVector::at(const LabeledSocialGraph& graph, NodeIndex node) const {
  if (graph.is_label_node(node)) return Boundary(graph, node);
  return scores[node];
}

void WalkConfig::Validate() const {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kConfig, "walk epsilon must be positive");
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::kConfig, "walk max_iterations must be at least 1");
  }
}

ScoreVector InitializeScores(const LabeledSocialGraph& graph,
                             const std::map<std::string, double>& priors,
                             SeedMode mode) {
  ScoreVector init;
  init.unreachable = UnreachableUsers(graph);
  init.scores.assign(graph.num_users(), 0.5);
  if (mode == SeedMode::kUniform) return init;

  for (const auto& [id, prior] : priors) {
    if (!(prior >= 0.0 && prior <= 1.0)) {
      throw Error(ErrorCode::kMalformedPrior,
                  "prior for '" + id + "' is outside [0, 1]");
    }
  }
  for (NodeIndex u = 0; u < graph.num_users(); ++u) {
    auto it = priors.find(graph.id(u));
    if (it == priors.end()) {
      throw Error(ErrorCode::kCoverage,
                  "no prior for user '" + graph.id(u) + "'");
    }
    init.scores[u] = it->second;
  }
  return init;
}

ScoreVector SybilWalk(const LabeledSocialGraph& graph, const ScoreVector& init,
                      const WalkConfig& config,
                      const IterationObserver& observer) {
  config.Validate();
  const std::size_t n = graph.num_users();
  if (init.scores.size() != n) {
    throw Error(ErrorCode::kCoverage,
                "initial scores do not match the graph's user count");
  }
  ScoreVector result;
  result.unreachable = init.unreachable.size() == n ? init.unreachable
                                                    : UnreachableUsers(graph);
  std::vector<double> previous = init.scores;
  std::vector<double> current(n);

  int iteration = 0;
  double residual = 0.0;
  do {
    residual = 0.0;
    // Reads only `previous`, so every user could be updated in parallel.
    for (NodeIndex u = 0; u < n; ++u) {
      const double degree = graph.degree_weight(u);
      if (result.unreachable[u] || !(degree > 0.0)) {
        current[u] = previous[u];
        continue;
      }
      double sum = 0.0;
      for (const Neighbor& nb : graph.neighbors(u)) {
        const double score = graph.is_label_node(nb.node)
                                 ? Boundary(graph, nb.node)
                                 : previous[nb.node];
        sum += nb.weight * score;
      }
      current[u] = std::clamp(sum / degree, 0.0, 1.0);
      const double change = current[u] - previous[u];
      residual += change * change;
    }
    ++iteration;
    if (observer) observer(iteration, current);
    previous.swap(current);
  } while (residual >= config.epsilon && iteration < config.max_iterations);

  result.scores = std::move(previous);
  result.iteration_count = iteration;
  result.final_residual = residual;
  return result;
}

ScoreVector ExactHittingProbabilities(const LabeledSocialGraph& graph) {
  const std::size_t n = graph.num_users();
  ScoreVector result;
  result.unreachable = UnreachableUsers(graph);
  RequireReachable(graph, result.unreachable);

  // (I - P_uu) p = P_u,ls, row-major with the right-hand side appended.
  const std::size_t width = n + 1;
  std::vector<double> a(n * width, 0.0);
  for (NodeIndex u = 0; u < n; ++u) {
    const double degree = graph.degree_weight(u);
    double* row = &a[u * width];
    row[u] = 1.0;
    for (const Neighbor& nb : graph.neighbors(u)) {
      const double p = nb.weight / degree;
      if (nb.node == graph.sybil_label_node()) {
        row[n] += p;
      } else if (!graph.is_label_node(nb.node)) {
        row[nb.node] -= p;
      }
    }
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * width + col]) > std::abs(a[pivot * width + col])) {
        pivot = r;
      }
    }
    if (a[pivot * width + col] == 0.0) {
      throw Error(ErrorCode::kInternal, "singular absorbing-chain system");
    }
    if (pivot != col) {
      std::swap_ranges(a.begin() + pivot * width, a.begin() + (pivot + 1) * width,
                       a.begin() + col * width);
    }
    const double* pivot_row = &a[col * width];
    for (std::size_t r = col + 1; r < n; ++r) {
      double* row = &a[r * width];
      const double factor = row[col] / pivot_row[col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < width; ++c) row[c] -= factor * pivot_row[c];
    }
  }
  result.scores.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    const double* row = &a[i * width];
    double value = row[n];
    for (std::size_t c = i + 1; c < n; ++c) value -= row[c] * result.scores[c];
    result.scores[i] = std::clamp(value / row[i], 0.0, 1.0);
  }
  return result;
}

ScoreVector MonteCarloScores(const LabeledSocialGraph& graph,
                             std::uint64_t walks_per_node,
                             std::uint64_t rng_seed, std::uint64_t step_cap) {
  if (walks_per_node == 0) {
    throw Error(ErrorCode::kConfig, "walks_per_node must be positive");
  }
  const std::size_t n = graph.num_users();
  // Cumulative neighbor weights for inverse-CDF sampling.
  std::vector<std::vector<double>> cumulative(graph.num_nodes());
  for (NodeIndex u = 0; u < n; ++u) {
    double running = 0.0;
    for (const Neighbor& nb : graph.neighbors(u)) {
      running += nb.weight;
      cumulative[u].push_back(running);
    }
  }

  ScoreVector result;
  result.unreachable = UnreachableUsers(graph);
  result.scores.assign(n, 0.0);
  for (NodeIndex start = 0; start < n; ++start) {
    if (cumulative[start].empty() || !(cumulative[start].back() > 0.0)) {
      throw Error(ErrorCode::kNonabsorbingWalk,
                  "walk from isolated user '" + graph.id(start) + "'");
    }
    std::mt19937_64 rng(MixSeed(rng_seed ^ MixSeed(start)));
    std::uint64_t absorbed_at_sybil = 0;
    for (std::uint64_t walk = 0; walk < walks_per_node; ++walk) {
      NodeIndex node = start;
      std::uint64_t steps = 0;
      while (!graph.is_label_node(node)) {
        if (++steps > step_cap) {
          throw Error(ErrorCode::kNonabsorbingWalk,
                      "walk from '" + graph.id(start) + "' exceeded " +
                          std::to_string(step_cap) + " steps");
        }
        const std::vector<double>& cdf = cumulative[node];
        std::uniform_real_distribution<double> pick(0.0, cdf.back());
        const double r = pick(rng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
        if (it == cdf.end()) --it;
        node = graph.neighbors(node)[static_cast<std::size_t>(it - cdf.begin())].node;
      }
      if (node == graph.sybil_label_node()) ++absorbed_at_sybil;
    }
    result.scores[start] = static_cast<double>(absorbed_at_sybil) /
                           static_cast<double>(walks_per_node);
  }
  return result;
}

}  // namespace hybridsybil
