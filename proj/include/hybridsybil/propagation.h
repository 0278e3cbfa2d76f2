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

#ifndef HYBRIDSYBIL_PROPAGATION_H_
#define HYBRIDSYBIL_PROPAGATION_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hybridsybil/graph.h"

namespace hybridsybil {

enum class SeedMode { kSvm, kUniform };

// Per-user sybil scores. The label nodes are not stored: l_b is always 0 and
// l_s always 1.
struct ScoreVector {
  std::vector<double> scores;
  // Users whose walk can never be absorbed; they keep their initial score.
  std::vector<bool> unreachable;
  int iteration_count = 0;
  double final_residual = 0.0;

  static constexpr double kBenignBoundary = 0.0;
  static constexpr double kSybilBoundary = 1.0;

  // Score of any node, label nodes included.
  double at(const LabeledSocialGraph& graph, NodeIndex node) const;
};

struct WalkConfig {
  double epsilon = 1e-8;  // on the absolute sum of squared changes
  int max_iterations = 1000;
  SeedMode seed_mode = SeedMode::kSvm;

  void Validate() const;
};

// Called after every sweep with the 1-based iteration number and the new
// user scores.
using IterationObserver =
    std::function<void(int iteration, std::span<const double> scores)>;

// kSvm copies priors (which must cover every user and lie in [0,1]);
// kUniform starts every user at 0.5. Throws kMalformedPrior or kCoverage.
ScoreVector InitializeScores(const LabeledSocialGraph& graph,
                             const std::map<std::string, double>& priors,
                             SeedMode mode);

// Synchronous fixed-point iteration
//   p_u <- sum_{v in adj(u)} (w_uv / sum_t w_ut) p_v
// over all reachable users, with l_b = 0 and l_s = 1 held fixed. Stops once
// the squared residual drops below epsilon or after max_iterations sweeps.
ScoreVector SybilWalk(const LabeledSocialGraph& graph, const ScoreVector& init,
                      const WalkConfig& config,
                      const IterationObserver& observer = {});

// Probability of absorption at l_s, solved directly by dense Gaussian
// elimination. Intended for graphs up to a few thousand users. Throws
// kUnreachableNode if some user cannot reach a label node.
ScoreVector ExactHittingProbabilities(const LabeledSocialGraph& graph);

inline constexpr std::uint64_t kDefaultWalkStepCap = 1'000'000;

// Fraction of `walks_per_node` weighted random walks from each user that are
// absorbed at l_s. Each user draws from its own stream derived from
// `rng_seed`, so results do not depend on evaluation order. Throws
// kNonabsorbingWalk when a walk exceeds `step_cap` steps or starts at an
// isolated user.
ScoreVector MonteCarloScores(const LabeledSocialGraph& graph,
                             std::uint64_t walks_per_node,
                             std::uint64_t rng_seed,
                             std::uint64_t step_cap = kDefaultWalkStepCap);

}  // namespace hybridsybil

#endif  // HYBRIDSYBIL_PROPAGATION_H_
