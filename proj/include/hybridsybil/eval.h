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

#ifndef HYBRIDSYBIL_EVAL_H_
#define HYBRIDSYBIL_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hybridsybil/dataset.h"
#include "hybridsybil/graph.h"
#include "hybridsybil/label.h"
#include "hybridsybil/propagation.h"
#include "hybridsybil/svm.h"

namespace hybridsybil {

enum class Verdict { kFake, kReal };

inline constexpr double kDefaultThreshold = 0.5;

// Fake iff score >= threshold, so a tie is fake.
inline Verdict ScoreToLabel(double score,
                            double threshold = kDefaultThreshold) {
  return score >= threshold ? Verdict::kFake : Verdict::kReal;
}

// Confusion counts with the fake class as the positive class.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& other);
  friend bool operator==(const ConfusionCounts&,
                         const ConfusionCounts&) = default;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Precision, recall and F1 from raw counts. A ratio with a zero denominator
// is reported as 0.
ClassMetrics FakeClassMetrics(const ConfusionCounts& counts);
ClassMetrics RealClassMetrics(const ConfusionCounts& counts);

struct FoldReport {
  ConfusionCounts counts;
  ClassMetrics fake;
  ClassMetrics real;
};

struct EvalReport {
  std::string variant;
  double threshold = kDefaultThreshold;
  // Pooled over every evaluated sample.
  ConfusionCounts counts;
  ClassMetrics fake;
  ClassMetrics real;
  std::vector<FoldReport> folds;
  // Unweighted mean of the per-fold metrics.
  ClassMetrics mean_fake;
  ClassMetrics mean_real;
  // Fold with the highest fake-class F1 (first one on ties).
  std::size_t best_fold = 0;
};

// Splits ids into k folds whose sizes differ by at most one. With `strata`
// the split is stratified by label. Throws kConfig when k is out of range.
std::vector<std::vector<std::string>> KFoldSplit(
    std::span<const std::string> ids, int k, std::uint64_t rng_seed,
    const std::map<std::string, Label>* strata = nullptr);

// Counts for every id present in both maps with a known truth label.
// Throws kNoData when no id qualifies.
ConfusionCounts CountOutcomes(const std::map<std::string, Verdict>& predicted,
                              const std::map<std::string, Label>& truth);

// Single-fold report.
EvalReport Evaluate(const std::map<std::string, Verdict>& predicted,
                    const std::map<std::string, Label>& truth,
                    double threshold = kDefaultThreshold);

// Aggregates per-fold counts into a report.
EvalReport AggregateFolds(std::span<const ConfusionCounts> folds,
                          double threshold);

enum class PipelineVariant { kSvmOnly, kHybrid, kUniformPriorHybrid };

std::string_view VariantName(PipelineVariant variant);

struct ExperimentConfig {
  int folds = 5;
  std::uint64_t cv_seed = 42;
  TrainConfig train;
  WalkConfig walk;
  GraphOptions graph;
  double threshold = kDefaultThreshold;
};

struct ExperimentResult {
  EvalReport report;
  // Final score of every held-out account, keyed by id.
  std::map<std::string, double> held_out_scores;
};

// k-fold cross-validation over the labeled accounts. Each fold trains the SVM
// (and its normalization) on the remaining folds. svm_only thresholds the
// sigmoid scores; the hybrid variants run SybilWalk on a graph in which only
// the training folds carry label edges, seeded by the fold's SVM scores or
// by 0.5 everywhere. Held-out accounts are scored against ground_truth,
// falling back to labels.
ExperimentResult RunExperiment(const Dataset& dataset, PipelineVariant variant,
                               const ExperimentConfig& config);

std::string ReportToJson(std::span<const EvalReport> reports);
std::string ReportToTable(const EvalReport& report);

}  // namespace hybridsybil

#endif  // HYBRIDSYBIL_EVAL_H_
