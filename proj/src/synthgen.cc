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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "hybridsybil/error.h"

namespace hybridsybil {
namespace {

// Means follow the qualitative direction of each feature: sybils are young,
// have fewer friends, join more groups, react/comment/share more, receive
// less engagement and tag pages rather than people.
constexpr FeatureMeans kMeans = {
    .benign = {900, 300, 20, 60, 40, 25, 150, 80, 200, 60, 15, 20, 15, 3, 30,
               25, 20, 2},
    .sybil = {400, 180, 35, 30, 25, 12, 260, 130, 90, 30, 8, 12, 8, 6, 70, 12,
              10, 5},
};

std::string NodeId(char prefix, int index) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%c%05d", prefix, index);
  return buffer;
}

void AddRegion(char prefix, int size, const SynthConfig& config,
               std::mt19937_64& rng, std::vector<EdgeObservation>& edges) {
  std::bernoulli_distribution connect(config.intra_edge_prob);
  std::uniform_int_distribution<std::uint64_t> mutual(
      static_cast<std::uint64_t>((config.mutual_friend_scale + 1) / 2),
      static_cast<std::uint64_t>(config.mutual_friend_scale));
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      if (!connect(rng)) continue;
      edges.push_back({NodeId(prefix, i), NodeId(prefix, j), mutual(rng)});
    }
  }
}

std::vector<std::pair<int, int>> SampleAttackPairs(const SynthConfig& config,
                                                   std::mt19937_64& rng) {
  const std::uint64_t total = static_cast<std::uint64_t>(config.n_benign) *
                              static_cast<std::uint64_t>(config.n_sybil);
  std::vector<std::pair<int, int>> pairs;
  if (config.attack_edges * 2 > total) {
    pairs.reserve(total);
    for (int b = 0; b < config.n_benign; ++b) {
      for (int s = 0; s < config.n_sybil; ++s) pairs.emplace_back(b, s);
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(config.attack_edges);
    return pairs;
  }
  std::uniform_int_distribution<int> pick_benign(0, config.n_benign - 1);
  std::uniform_int_distribution<int> pick_sybil(0, config.n_sybil - 1);
  std::set<std::pair<int, int>> seen;
  while (pairs.size() < config.attack_edges) {
    std::pair<int, int> p{pick_benign(rng), pick_sybil(rng)};
    if (seen.insert(p).second) pairs.push_back(p);
  }
  return pairs;
}

std::uint64_t DrawCount(double mean, double noise, std::mt19937_64& rng) {
  double rate = mean;
  if (noise > 0.0) {
    std::gamma_distribution<double> gamma(1.0 / noise, mean * noise);
    rate = gamma(rng);
  }
  if (!(rate > 0.0)) return 0;
  std::poisson_distribution<std::uint64_t> poisson(rate);
  return poisson(rng);
}

std::vector<int> PickLabeled(int size, double fraction, std::mt19937_64& rng) {
  std::vector<int> order(static_cast<std::size_t>(size));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const auto count = std::clamp<long>(std::lround(fraction * size), 1L, size);
  order.resize(static_cast<std::size_t>(count));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace

void SynthConfig::Validate() const {
  if (n_benign < 1 || n_sybil < 1) {
    throw Error(ErrorCode::kConfig, "synth needs at least one node per region");
  }
  if (!(intra_edge_prob > 0.0 && intra_edge_prob <= 1.0)) {
    throw Error(ErrorCode::kConfig, "synth intra_edge_prob must be in (0, 1]");
  }
  if (attack_edges > static_cast<std::uint64_t>(n_benign) *
                         static_cast<std::uint64_t>(n_sybil)) {
    throw Error(ErrorCode::kConfig,
                "synth attack_edges exceeds n_benign * n_sybil");
  }
  if (!(label_fraction > 0.0 && label_fraction <= 1.0)) {
    throw Error(ErrorCode::kConfig, "synth label_fraction must be in (0, 1]");
  }
  if (mutual_friend_scale < 1) {
    throw Error(ErrorCode::kConfig, "synth mutual_friend_scale must be >= 1");
  }
  if (!(feature_noise >= 0.0) || !std::isfinite(feature_noise)) {
    throw Error(ErrorCode::kConfig, "synth feature_noise must be >= 0");
  }
}

const FeatureMeans& SyntheticFeatureMeans() { return kMeans; }

Dataset Generate(const SynthConfig& config) {
  config.Validate();
  std::mt19937_64 rng(config.rng_seed);
  Dataset data;

  AddRegion('b', config.n_benign, config, rng, data.edges);
  AddRegion('s', config.n_sybil, config, rng, data.edges);
  std::uniform_int_distribution<std::uint64_t> weak(0, 1);
  for (const auto& [b, s] : SampleAttackPairs(config, rng)) {
    data.edges.push_back({NodeId('b', b), NodeId('s', s), weak(rng)});
  }

  const std::vector<int> known_benign =
      PickLabeled(config.n_benign, config.label_fraction, rng);
  const std::vector<int> known_sybil =
      PickLabeled(config.n_sybil, config.label_fraction, rng);
  for (int i : known_benign) data.labels[NodeId('b', i)] = Label::kBenign;
  for (int i : known_sybil) data.labels[NodeId('s', i)] = Label::kSybil;

  auto add_accounts = [&](char prefix, int size, Label truth,
                          const std::array<double, kNumFeatures>& means) {
    for (int i = 0; i < size; ++i) {
      AccountRecord record;
      record.account_id = NodeId(prefix, i);
      for (std::size_t f = 0; f < kNumFeatures; ++f) {
        record.counts[f] = DrawCount(means[f], config.feature_noise, rng);
      }
      auto known = data.labels.find(record.account_id);
      record.label = known == data.labels.end() ? Label::kUnknown : known->second;
      data.ground_truth[record.account_id] = truth;
      data.accounts.push_back(std::move(record));
    }
  };
  add_accounts('b', config.n_benign, Label::kBenign, kMeans.benign);
  add_accounts('s', config.n_sybil, Label::kSybil, kMeans.sybil);
  return data;
}

}  // namespace hybridsybil
