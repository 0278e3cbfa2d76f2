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

#ifndef HYBRIDSYBIL_SVM_H_
#define HYBRIDSYBIL_SVM_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "hybridsybil/features.h"
#include "hybridsybil/label.h"

namespace hybridsybil {

// How raw SVM labels map onto account classes. A sybil carries raw label -1
// and the hyperplane is oriented so that sybils fall on the side where
// z = c^T x - b >= 0. S(z) is then directly the sybil probability.
struct LabelConvention {
  int sybil_label = -1;
  int benign_label = 1;
  int sybil_decision_sign = 1;

  friend bool operator==(const LabelConvention&,
                         const LabelConvention&) = default;
};

struct LinearModel {
  FeatureArray weights{};
  double bias = 0.0;
  NormalizationStats normalization = NormalizationStats::Identity();
  LabelConvention label_convention;
};

struct TrainConfig {
  double regularization = 1.0;  // C
  int max_epochs = 200;
  double tolerance = 1e-4;
  std::uint64_t rng_seed = 0;
  // Per-class multipliers on C. Both 1 means no class reweighting.
  double sybil_cost = 1.0;
  double benign_cost = 1.0;

  void Validate() const;
};

// Fits a soft-margin linear SVM on already-normalized vectors, minimizing
//   (1/2)|c|^2 + sum_i C_i max(0, 1 - s_i (c^T x_i - b))
// with s_i = +1 for sybils and -1 for benign accounts. The returned model's
// normalization is Identity(); callers that normalized the data attach their
// stats afterwards (see TrainOnRaw).
LinearModel Train(std::span<const FeatureVector> vectors,
                  std::span<const Label> labels, const TrainConfig& config);

// Fits normalization on `vectors`, trains on the normalized data and stores
// the stats in the model.
LinearModel TrainOnRaw(std::span<const FeatureVector> vectors,
                       std::span<const Label> labels,
                       const TrainConfig& config);

// z = c^T x - b for a normalized vector.
double DecisionValue(const LinearModel& model, const FeatureVector& vector);

// Decision value oriented so that larger means more sybil-like.
double OrientedDecisionValue(const LinearModel& model,
                             const FeatureVector& vector);

// Logistic sigmoid, stable for any finite or infinite argument.
double Sigmoid(double z);

// S(oriented z) for a normalized vector.
double SybilProbability(const LinearModel& model, const FeatureVector& vector);

// Normalizes a raw vector with the model's stats, then SybilProbability.
double ScoreRaw(const LinearModel& model, const FeatureVector& raw);

// Value of the training objective for `model` on normalized data.
double HingeObjective(const LinearModel& model,
                      std::span<const FeatureVector> vectors,
                      std::span<const Label> labels, const TrainConfig& config);

inline constexpr int kModelFormatVersion = 1;

std::string SerializeModel(const LinearModel& model);
LinearModel ParseModel(const std::string& text);
void SaveModel(const LinearModel& model, const std::filesystem::path& path);
LinearModel LoadModel(const std::filesystem::path& path);

}  // namespace hybridsybil

#endif  // HYBRIDSYBIL_SVM_H_
