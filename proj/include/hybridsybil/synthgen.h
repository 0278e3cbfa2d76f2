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

#ifndef HYBRIDSYBIL_SYNTHGEN_H_
#define HYBRIDSYBIL_SYNTHGEN_H_

#include <array>
#include <cstdint>

#include "hybridsybil/dataset.h"
#include "hybridsybil/features.h"

namespace hybridsybil {

struct SynthConfig {
  int n_benign = 200;
  int n_sybil = 200;
  double intra_edge_prob = 0.05;
  std::uint64_t attack_edges = 20;
  double label_fraction = 0.2;
  int mutual_friend_scale = 10;
  // Dispersion of the per-account count draws: each count is Poisson with a
  // Gamma(1 / noise, mean * noise) rate, so noise 0 is plain Poisson.
  double feature_noise = 1.5;
  std::uint64_t rng_seed = 42;

  void Validate() const;
};

// Class-conditional mean of every feature, in kFeatureFields order.
struct FeatureMeans {
  std::array<double, kNumFeatures> benign;
  std::array<double, kNumFeatures> sybil;
};
const FeatureMeans& SyntheticFeatureMeans();

// Two Erdos-Renyi regions joined by exactly `attack_edges` distinct random
// benign-sybil pairs. Benign ids are "b00000", ..., sybil ids "s00000", ....
// Intra-region mutual-friend counts are uniform in [ceil(scale/2), scale];
// attack-edge counts are 0 or 1. Deterministic given rng_seed.
Dataset Generate(const SynthConfig& config);

}  // namespace hybridsybil

#endif  // HYBRIDSYBIL_SYNTHGEN_H_
