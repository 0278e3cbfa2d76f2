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

#include "hybridsybil/features.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hybridsybil/error.h"

namespace hybridsybil {
namespace {

double BinaryEntropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double Median(std::vector<double> values) {
  const std::size_t n = values.size();
  auto mid = values.begin() + n / 2;
  std::nth_element(values.begin(), mid, values.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return lower + (upper - lower) / 2.0;
}

}  // namespace

NormalizationStats NormalizationStats::Identity() {
  NormalizationStats stats;
  stats.means.fill(0.0);
  stats.stds.fill(1.0);
  return stats;
}

std::optional<std::size_t> FeatureIndex(std::string_view field) {
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    if (kFeatureFields[i] == field) return i;
  }
  return std::nullopt;
}

FeatureVector ExtractFeatures(const AccountRecord& record) {
  if (record.account_id.empty()) {
    throw Error(ErrorCode::kMalformedRecord, "account record has no id");
  }
  FeatureVector vector;
  vector.account_id = record.account_id;
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    vector.values[i] = static_cast<double>(record.counts[i].value_or(0));
  }
  return vector;
}

NormalizationStats FitNormalization(std::span<const FeatureVector> vectors) {
  if (vectors.empty()) {
    throw Error(ErrorCode::kEmptyDataset,
                "cannot fit normalization on an empty dataset");
  }
  const double n = static_cast<double>(vectors.size());
  NormalizationStats stats;
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    // Welford keeps the variance accurate for large counts.
    double mean = 0.0;
    double m2 = 0.0;
    double k = 0.0;
    for (const FeatureVector& v : vectors) {
      k += 1.0;
      const double delta = v.values[f] - mean;
      mean += delta / k;
      m2 += delta * (v.values[f] - mean);
    }
    const double sd = std::sqrt(std::max(m2, 0.0) / n);
    stats.means[f] = mean;
    stats.stds[f] = sd > 0.0 ? sd : 1.0;
  }
  return stats;
}

FeatureVector Normalize(const FeatureVector& vector,
                        const NormalizationStats& stats) {
  FeatureVector out;
  out.account_id = vector.account_id;
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    out.values[f] = (vector.values[f] - stats.means[f]) / stats.stds[f];
  }
  return out;
}

FeatureVector Denormalize(const FeatureVector& vector,
                          const NormalizationStats& stats) {
  FeatureVector out;
  out.account_id = vector.account_id;
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    out.values[f] = vector.values[f] * stats.stds[f] + stats.means[f];
  }
  return out;
}

std::vector<FeatureGain> RankFeaturesByEntropy(
    std::span<const FeatureVector> vectors, std::span<const Label> labels) {
  if (vectors.size() != labels.size()) {
    throw Error(ErrorCode::kMalformedData,
                "feature vectors and labels differ in length");
  }
  std::size_t sybils = 0;
  for (Label label : labels) {
    if (!IsKnown(label)) {
      throw Error(ErrorCode::kDegenerateLabels,
                  "entropy ranking needs benign or sybil labels only");
    }
    if (label == Label::kSybil) ++sybils;
  }
  const std::size_t n = labels.size();
  if (sybils == 0 || sybils == n) {
    throw Error(ErrorCode::kDegenerateLabels,
                "entropy ranking needs both classes present");
  }
  const double prior_entropy =
      BinaryEntropy(static_cast<double>(sybils) / static_cast<double>(n));

  std::vector<FeatureGain> gains;
  gains.reserve(kNumFeatures);
  std::vector<double> column(n);
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    for (std::size_t i = 0; i < n; ++i) column[i] = vectors[i].values[f];
    const double median = Median(column);
    std::size_t left = 0;
    std::size_t left_sybil = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (column[i] <= median) {
        ++left;
        if (labels[i] == Label::kSybil) ++left_sybil;
      }
    }
    const std::size_t right = n - left;
    const std::size_t right_sybil = sybils - left_sybil;
    double conditional = 0.0;
    if (left > 0) {
      conditional += static_cast<double>(left) / static_cast<double>(n) *
                     BinaryEntropy(static_cast<double>(left_sybil) /
                                   static_cast<double>(left));
    }
    if (right > 0) {
      conditional += static_cast<double>(right) / static_cast<double>(n) *
                     BinaryEntropy(static_cast<double>(right_sybil) /
                                   static_cast<double>(right));
    }
    gains.push_back({f, std::max(prior_entropy - conditional, 0.0)});
  }
  std::stable_sort(gains.begin(), gains.end(),
                   [](const FeatureGain& a, const FeatureGain& b) {
                     return a.information_gain > b.information_gain;
                   });
  return gains;
}

}  // namespace hybridsybil
