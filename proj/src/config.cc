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

#include "hybridsybil/config.h"

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <type_traits>

#include "hybridsybil/error.h"

namespace hybridsybil {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void BadValue(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::kConfig, "invalid value '" + std::string(value) +
                                      "' for key '" + std::string(key) + "'");
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) BadValue(key, value);
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) BadValue(key, value);
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  BadValue(key, value);
}

using Setter = void (*)(PipelineConfig&, std::string_view key,
                        std::string_view value);

struct Entry {
  ConfigKey key;
  Setter set;
};

#define HS_STRING(field) \
  [](PipelineConfig& c, std::string_view, std::string_view v) { c.field = std::string(v); }
#define HS_NUMBER(field, type)                                       \
  [](PipelineConfig& c, std::string_view k, std::string_view v) {   \
    c.field = ParseNumber<type>(k, v);                               \
  }

const std::array kEntries = {
    Entry{{"paths.accounts", "accounts JSONL input"}, HS_STRING(paths.accounts)},
    Entry{{"paths.edges", "edge list TSV input"}, HS_STRING(paths.edges)},
    Entry{{"paths.labels", "known labels TSV input"}, HS_STRING(paths.labels)},
    Entry{{"paths.ground_truth", "ground-truth TSV (evaluation only)"},
          HS_STRING(paths.ground_truth)},
    Entry{{"paths.features", "features CSV"}, HS_STRING(paths.features)},
    Entry{{"paths.model", "model JSON"}, HS_STRING(paths.model)},
    Entry{{"paths.priors", "SVM priors CSV"}, HS_STRING(paths.priors)},
    Entry{{"paths.scores", "final scores CSV"}, HS_STRING(paths.scores)},
    Entry{{"paths.report", "report JSON"}, HS_STRING(paths.report)},
    Entry{{"paths.out_dir", "synth output directory"}, HS_STRING(paths.out_dir)},
    Entry{{"svm.c", "regularization C"}, HS_NUMBER(train.regularization, double)},
    Entry{{"svm.max_epochs", "solver passes over the data"},
          HS_NUMBER(train.max_epochs, int)},
    Entry{{"svm.tolerance", "KKT gap at which training stops"},
          HS_NUMBER(train.tolerance, double)},
    Entry{{"svm.seed", "sample-order shuffle seed"},
          HS_NUMBER(train.rng_seed, std::uint64_t)},
    Entry{{"svm.sybil_cost", "multiplier on C for sybil samples"},
          HS_NUMBER(train.sybil_cost, double)},
    Entry{{"svm.benign_cost", "multiplier on C for benign samples"},
          HS_NUMBER(train.benign_cost, double)},
    Entry{{"walk.epsilon", "squared-residual stopping threshold"},
          HS_NUMBER(walk.epsilon, double)},
    Entry{{"walk.max_iterations", "iteration cap T"},
          HS_NUMBER(walk.max_iterations, int)},
    Entry{{"walk.seed_mode", "svm or uniform initialization"},
          [](PipelineConfig& c, std::string_view k, std::string_view v) {
            if (v == "svm") c.walk.seed_mode = SeedMode::kSvm;
            else if (v == "uniform") c.walk.seed_mode = SeedMode::kUniform;
            else BadValue(k, v);
          }},
    Entry{{"graph.strict_weights", "drop zero-mutual-friend edges"},
          [](PipelineConfig& c, std::string_view k, std::string_view v) {
            c.graph.strict_weights = ParseBool(k, v);
          }},
    Entry{{"synth.n_benign", "benign accounts"}, HS_NUMBER(synth.n_benign, int)},
    Entry{{"synth.n_sybil", "sybil accounts"}, HS_NUMBER(synth.n_sybil, int)},
    Entry{{"synth.intra_edge_prob", "edge probability inside a region"},
          HS_NUMBER(synth.intra_edge_prob, double)},
    Entry{{"synth.attack_edges", "benign-sybil edges"},
          HS_NUMBER(synth.attack_edges, std::uint64_t)},
    Entry{{"synth.label_fraction", "labeled share of each region"},
          HS_NUMBER(synth.label_fraction, double)},
    Entry{{"synth.mutual_friend_scale", "maximum mutual-friend count"},
          HS_NUMBER(synth.mutual_friend_scale, int)},
    Entry{{"synth.feature_noise", "count dispersion"},
          HS_NUMBER(synth.feature_noise, double)},
    Entry{{"synth.seed", "generator seed"},
          HS_NUMBER(synth.rng_seed, std::uint64_t)},
    Entry{{"eval.folds", "cross-validation folds"}, HS_NUMBER(folds, int)},
    Entry{{"eval.seed", "fold assignment seed"},
          HS_NUMBER(cv_seed, std::uint64_t)},
    Entry{{"eval.threshold", "fake iff score >= threshold"},
          HS_NUMBER(threshold, double)},
};

#undef HS_STRING
#undef HS_NUMBER

std::array<ConfigKey, kEntries.size()> MakeKeys() {
  std::array<ConfigKey, kEntries.size()> keys;
  for (std::size_t i = 0; i < kEntries.size(); ++i) keys[i] = kEntries[i].key;
  return keys;
}

}  // namespace

ExperimentConfig PipelineConfig::experiment() const {
  ExperimentConfig out;
  out.folds = folds;
  out.cv_seed = cv_seed;
  out.train = train;
  out.walk = walk;
  out.graph = graph;
  out.threshold = threshold;
  return out;
}

void PipelineConfig::Validate() const {
  train.Validate();
  walk.Validate();
  synth.Validate();
  if (folds < 2) throw Error(ErrorCode::kConfig, "eval.folds must be at least 2");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::kConfig, "eval.threshold must be in (0, 1)");
  }
}

std::span<const ConfigKey> ConfigKeys() {
  static const auto keys = MakeKeys();
  return keys;
}

void SetConfigValue(PipelineConfig& config, std::string_view key,
                    std::string_view value) {
  key = Trim(key);
  value = Trim(value);
  for (const Entry& entry : kEntries) {
    if (entry.key.name == key) {
      entry.set(config, key, value);
      return;
    }
  }
  throw Error(ErrorCode::kConfig, "unknown config key '" + std::string(key) + "'");
}

void ApplyConfigText(PipelineConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{}
                                             : text.substr(newline + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfig, "config line " + std::to_string(line_no) +
                                          ": expected section.key = value");
    }
    try {
      SetConfigValue(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.code(),
                  "config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void SetAllSeeds(PipelineConfig& config, std::uint64_t seed) {
  config.train.rng_seed = seed;
  config.synth.rng_seed = seed;
  config.cv_seed = seed;
}

}  // namespace hybridsybil
