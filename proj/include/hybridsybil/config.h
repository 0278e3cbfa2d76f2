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

#ifndef HYBRIDSYBIL_CONFIG_H_
#define HYBRIDSYBIL_CONFIG_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hybridsybil/eval.h"
#include "hybridsybil/graph.h"
#include "hybridsybil/propagation.h"
#include "hybridsybil/svm.h"
#include "hybridsybil/synthgen.h"

namespace hybridsybil {

struct PipelinePaths {
  std::string accounts;      // accounts JSONL
  std::string edges;         // edge list TSV
  std::string labels;        // known labels TSV
  std::string ground_truth;  // full truth TSV, evaluation only
  std::string features;      // features CSV
  std::string model;         // model JSON
  std::string priors;        // SVM priors CSV
  std::string scores;        // final scores CSV
  std::string report;        // report JSON
  std::string out_dir;       // synth output directory
};

// Every knob of a run. The text form is one `section.key = value` per line;
// `#` starts a comment.
struct PipelineConfig {
  PipelinePaths paths;
  TrainConfig train;
  WalkConfig walk;
  GraphOptions graph;
  SynthConfig synth;
  int folds = 5;
  std::uint64_t cv_seed = 42;
  double threshold = kDefaultThreshold;

  ExperimentConfig experiment() const;
  // Throws kConfig naming the first violated constraint.
  void Validate() const;
};

struct ConfigKey {
  std::string_view name;
  std::string_view help;
};

// All recognised dotted keys, in documentation order.
std::span<const ConfigKey> ConfigKeys();

// Throws kConfig naming the key when it is unknown or the value does not
// parse.
void SetConfigValue(PipelineConfig& config, std::string_view key,
                    std::string_view value);

// Applies every line of a config file on top of `config`. Errors cite the
// line number and key.
void ApplyConfigText(PipelineConfig& config, std::string_view text);

// Overrides every seed in the config.
void SetAllSeeds(PipelineConfig& config, std::uint64_t seed);

}  // namespace hybridsybil

#endif  // HYBRIDSYBIL_CONFIG_H_
