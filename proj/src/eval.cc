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

#include "hybridsybil/eval.h"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "hybridsybil/error.h"
#include "hybridsybil/features.h"

namespace hybridsybil {
namespace {

using Json = nlohmann::json;

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics MetricsFrom(std::size_t tp, std::size_t fp, std::size_t fn) {
  ClassMetrics m;
  m.precision = Ratio(tp, tp + fp);
  m.recall = Ratio(tp, tp + fn);
  const double sum = m.precision + m.recall;
  m.f1 = sum > 0.0 ? 2.0 * m.precision * m.recall / sum : 0.0;
  return m;
}

Json MetricsJson(const ClassMetrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

Json CountsJson(const ConfusionCounts& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
}

Label TruthOf(const Dataset& dataset, const std::string& id) {
  if (auto it = dataset.ground_truth.find(id); it != dataset.ground_truth.end()) {
    return it->second;
  }
  if (auto it = dataset.labels.find(id); it != dataset.labels.end()) {
    return it->second;
  }
  return Label::kUnknown;
}

}  // namespace

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  tp += other.tp;
  fp += other.fp;
  tn += other.tn;
  fn += other.fn;
  return *this;
}

ClassMetrics FakeClassMetrics(const ConfusionCounts& counts) {
  return MetricsFrom(counts.tp, counts.fp, counts.fn);
}

// The real class sees the same matrix with roles swapped: its true positives
// are the fake class's true negatives.
ClassMetrics RealClassMetrics(const ConfusionCounts& counts) {
  return MetricsFrom(counts.tn, counts.fn, counts.fp);
}

std::vector<std::vector<std::string>> KFoldSplit(
    std::span<const std::string> ids, int k, std::uint64_t rng_seed,
    const std::map<std::string, Label>* strata) {
  if (k < 1 || static_cast<std::size_t>(k) > ids.size()) {
    throw Error(ErrorCode::kConfig,
                "k = " + std::to_string(k) + " folds for " +
                    std::to_string(ids.size()) + " ids");
  }
  std::vector<std::string> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  std::mt19937_64 rng(rng_seed);

  std::vector<std::string> ordered;
  ordered.reserve(sorted.size());
  if (strata == nullptr) {
    std::shuffle(sorted.begin(), sorted.end(), rng);
    ordered = std::move(sorted);
  } else {
    for (Label group : {Label::kBenign, Label::kSybil, Label::kUnknown}) {
      std::vector<std::string> members;
      for (const std::string& id : sorted) {
        auto it = strata->find(id);
        const Label label = it == strata->end() ? Label::kUnknown : it->second;
        if (label == group) members.push_back(id);
      }
      std::shuffle(members.begin(), members.end(), rng);
      ordered.insert(ordered.end(), members.begin(), members.end());
    }
  }

  std::vector<std::vector<std::string>> folds(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    folds[i % folds.size()].push_back(std::move(ordered[i]));
  }
  return folds;
}

ConfusionCounts CountOutcomes(const std::map<std::string, Verdict>& predicted,
                              const std::map<std::string, Label>& truth) {
  ConfusionCounts counts;
  for (const auto& [id, verdict] : predicted) {
    auto it = truth.find(id);
    if (it == truth.end() || !IsKnown(it->second)) continue;
    const bool fake = it->second == Label::kSybil;
    if (verdict == Verdict::kFake) {
      fake ? ++counts.tp : ++counts.fp;
    } else {
      fake ? ++counts.fn : ++counts.tn;
    }
  }
  if (counts.total() == 0) {
    throw Error(ErrorCode::kNoData,
                "no prediction has a matching ground-truth label");
  }
  return counts;
}

EvalReport Evaluate(const std::map<std::string, Verdict>& predicted,
                    const std::map<std::string, Label>& truth,
                    double threshold) {
  const ConfusionCounts counts = CountOutcomes(predicted, truth);
  return AggregateFolds(std::span<const ConfusionCounts>(&counts, 1), threshold);
}

EvalReport AggregateFolds(std::span<const ConfusionCounts> folds,
                          double threshold) {
  if (folds.empty()) throw Error(ErrorCode::kNoData, "no folds to aggregate");
  EvalReport report;
  report.threshold = threshold;
  for (const ConfusionCounts& c : folds) {
    report.counts += c;
    FoldReport fold{c, FakeClassMetrics(c), RealClassMetrics(c)};
    report.mean_fake.precision += fold.fake.precision;
    report.mean_fake.recall += fold.fake.recall;
    report.mean_fake.f1 += fold.fake.f1;
    report.mean_real.precision += fold.real.precision;
    report.mean_real.recall += fold.real.recall;
    report.mean_real.f1 += fold.real.f1;
    report.folds.push_back(fold);
  }
  const double k = static_cast<double>(folds.size());
  for (ClassMetrics* m : {&report.mean_fake, &report.mean_real}) {
    m->precision /= k;
    m->recall /= k;
    m->f1 /= k;
  }
  report.fake = FakeClassMetrics(report.counts);
  report.real = RealClassMetrics(report.counts);
  for (std::size_t i = 1; i < report.folds.size(); ++i) {
    if (report.folds[i].fake.f1 > report.folds[report.best_fold].fake.f1) {
      report.best_fold = i;
    }
  }
  return report;
}

std::string_view VariantName(PipelineVariant variant) {
  switch (variant) {
    case PipelineVariant::kSvmOnly: return "svm_only";
    case PipelineVariant::kHybrid: return "hybrid";
    case PipelineVariant::kUniformPriorHybrid: return "uniform_prior_hybrid";
  }
  return "unknown";
}

ExperimentResult RunExperiment(const Dataset& dataset, PipelineVariant variant,
                               const ExperimentConfig& config) {
  std::map<std::string, FeatureVector> features;
  std::vector<std::string> account_ids;
  for (const AccountRecord& record : dataset.accounts) {
    FeatureVector v = ExtractFeatures(record);
    if (!features.emplace(record.account_id, std::move(v)).second) {
      throw Error(ErrorCode::kMalformedRecord,
                  "duplicate account '" + record.account_id + "'");
    }
    account_ids.push_back(record.account_id);
  }

  std::vector<std::string> labeled;
  for (const auto& [id, label] : dataset.labels) {
    if (!IsKnown(label)) continue;
    if (!features.contains(id)) {
      throw Error(ErrorCode::kCoverage,
                  "labeled node '" + id + "' has no account record");
    }
    labeled.push_back(id);
  }
  const auto folds =
      KFoldSplit(labeled, config.folds, config.cv_seed, &dataset.labels);

  ExperimentResult result;
  std::vector<ConfusionCounts> fold_counts;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const std::set<std::string> held_out(folds[f].begin(), folds[f].end());
    std::vector<FeatureVector> train_x;
    std::vector<Label> train_y;
    std::map<std::string, Label> fold_labels;
    for (const std::string& id : labeled) {
      if (held_out.contains(id)) continue;
      train_x.push_back(features.at(id));
      train_y.push_back(dataset.labels.at(id));
      fold_labels.emplace(id, dataset.labels.at(id));
    }
    const LinearModel model = TrainOnRaw(train_x, train_y, config.train);
    std::map<std::string, double> priors;
    for (const auto& [id, v] : features) priors.emplace(id, ScoreRaw(model, v));

    std::map<std::string, double> scores;
    if (variant == PipelineVariant::kSvmOnly) {
      for (const std::string& id : folds[f]) scores.emplace(id, priors.at(id));
    } else {
      const LabeledSocialGraph graph =
          BuildGraph(dataset.edges, fold_labels, config.graph, account_ids);
      const SeedMode mode = variant == PipelineVariant::kHybrid
                                ? SeedMode::kSvm
                                : SeedMode::kUniform;
      const ScoreVector walked =
          SybilWalk(graph, InitializeScores(graph, priors, mode), config.walk);
      for (const std::string& id : folds[f]) {
        scores.emplace(id, walked.scores[*graph.Find(id)]);
      }
    }

    std::map<std::string, Verdict> verdicts;
    std::map<std::string, Label> truth;
    for (const auto& [id, score] : scores) {
      verdicts.emplace(id, ScoreToLabel(score, config.threshold));
      truth.emplace(id, TruthOf(dataset, id));
      result.held_out_scores.emplace(id, score);
    }
    fold_counts.push_back(CountOutcomes(verdicts, truth));
  }
  result.report = AggregateFolds(fold_counts, config.threshold);
  result.report.variant = std::string(VariantName(variant));
  return result;
}

std::string ReportToJson(std::span<const EvalReport> reports) {
  Json doc = Json::array();
  for (const EvalReport& r : reports) {
    Json folds = Json::array();
    for (const FoldReport& fold : r.folds) {
      folds.push_back({{"counts", CountsJson(fold.counts)},
                       {"fake", MetricsJson(fold.fake)},
                       {"real", MetricsJson(fold.real)}});
    }
    doc.push_back({
        {"variant", r.variant},
        {"threshold", r.threshold},
        {"pooled",
         {{"counts", CountsJson(r.counts)},
          {"fake", MetricsJson(r.fake)},
          {"real", MetricsJson(r.real)}}},
        {"mean_over_folds",
         {{"fake", MetricsJson(r.mean_fake)}, {"real", MetricsJson(r.mean_real)}}},
        {"best_fold",
         {{"index", r.best_fold},
          {"fake", MetricsJson(r.folds.at(r.best_fold).fake)},
          {"real", MetricsJson(r.folds.at(r.best_fold).real)}}},
        {"folds", folds},
    });
  }
  return doc.dump(2) + "\n";
}

std::string ReportToTable(const EvalReport& report) {
  std::ostringstream out;
  char line[128];
  auto block = [&](const char* title, const ClassMetrics& fake,
                   const ClassMetrics& real) {
    out << title << "\n";
    std::snprintf(line, sizeof(line), "  %-10s %14s %14s\n", "", "Fake accounts",
                  "Real accounts");
    out << line;
    const std::pair<const char*, double ClassMetrics::*> rows[] = {
        {"Precision", &ClassMetrics::precision},
        {"Recall", &ClassMetrics::recall},
        {"F1", &ClassMetrics::f1}};
    for (const auto& [name, member] : rows) {
      std::snprintf(line, sizeof(line), "  %-10s %14.4f %14.4f\n", name,
                    fake.*member, real.*member);
      out << line;
    }
  };
  out << "variant " << report.variant << ", threshold " << report.threshold
      << ", " << report.folds.size() << " fold(s), " << report.counts.total()
      << " samples (TP " << report.counts.tp << ", FP " << report.counts.fp
      << ", TN " << report.counts.tn << ", FN " << report.counts.fn << ")\n";
  block("pooled:", report.fake, report.real);
  if (report.folds.size() > 1) {
    block("mean over folds:", report.mean_fake, report.mean_real);
    const std::string best = "best fold (" + std::to_string(report.best_fold) + "):";
    block(best.c_str(), report.folds[report.best_fold].fake,
          report.folds[report.best_fold].real);
  }
  return out.str();
}

}  // namespace hybridsybil
