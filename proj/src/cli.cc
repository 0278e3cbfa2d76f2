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

#include "hybridsybil/cli.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hybridsybil/config.h"
#include "hybridsybil/error.h"
#include "hybridsybil/eval.h"
#include "hybridsybil/features.h"
#include "hybridsybil/graph.h"
#include "hybridsybil/io.h"
#include "hybridsybil/propagation.h"
#include "hybridsybil/svm.h"
#include "hybridsybil/synthgen.h"

namespace hybridsybil {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateLabels:
    case ErrorCode::kNoData:
      return kExitDegenerateData;
    case ErrorCode::kIsolatedNode:
    case ErrorCode::kUnreachableNode:
    case ErrorCode::kNonabsorbingWalk:
    case ErrorCode::kInternal:
      return kExitInternal;
    default:
      return kExitInputError;
  }
}

class Logger {
 public:
  Logger(std::ostream& err, bool verbose) : err_(err), verbose_(verbose) {}
  template <typename... Args>
  void operator()(const Args&... args) const {
    if (!verbose_) return;
    err_ << "[hybridsybil] ";
    (err_ << ... << args);
    err_ << "\n";
  }

 private:
  std::ostream& err_;
  bool verbose_;
};

// Positional arguments win over config paths; a missing input is a usage
// error reported before any work happens.
std::string RequireInput(const std::string& positional, const std::string& configured,
                         const char* what) {
  const std::string& path = positional.empty() ? configured : positional;
  if (path.empty()) {
    throw Error(ErrorCode::kConfig, std::string("no ") + what + " given");
  }
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kIo, std::string(what) + " '" + path + "' does not exist");
  }
  return path;
}

void Emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    WriteFile(path, content);
  }
}

std::vector<FeatureVector> ExtractAll(std::span<const AccountRecord> accounts) {
  std::vector<FeatureVector> vectors;
  vectors.reserve(accounts.size());
  for (const AccountRecord& record : accounts) {
    vectors.push_back(ExtractFeatures(record));
  }
  return vectors;
}

LinearModel TrainFromLabels(std::span<const FeatureVector> vectors,
                            const std::map<std::string, Label>& labels,
                            const TrainConfig& config) {
  std::vector<FeatureVector> x;
  std::vector<Label> y;
  for (const FeatureVector& v : vectors) {
    auto it = labels.find(v.account_id);
    if (it == labels.end() || !IsKnown(it->second)) continue;
    x.push_back(v);
    y.push_back(it->second);
  }
  if (x.empty()) {
    throw Error(ErrorCode::kDegenerateLabels,
                "no feature row has a benign/sybil label");
  }
  return TrainOnRaw(x, y, config);
}

std::map<std::string, double> ScoreAll(const LinearModel& model,
                                       std::span<const FeatureVector> vectors) {
  std::map<std::string, double> priors;
  for (const FeatureVector& v : vectors) priors[v.account_id] = ScoreRaw(model, v);
  return priors;
}

struct WalkOutput {
  LabeledSocialGraph graph;
  ScoreVector scores;
};

WalkOutput RunWalk(const std::vector<EdgeObservation>& edges,
                   const std::map<std::string, Label>& labels,
                   const std::map<std::string, double>& priors,
                   const PipelineConfig& config) {
  std::vector<std::string> ids;
  ids.reserve(priors.size());
  for (const auto& [id, score] : priors) ids.push_back(id);
  WalkOutput result{BuildGraph(edges, labels, config.graph, ids), {}};
  const ScoreVector init =
      InitializeScores(result.graph, priors, config.walk.seed_mode);
  result.scores = SybilWalk(result.graph, init, config.walk);
  return result;
}

std::string ToText(auto&& writer) {
  std::ostringstream buffer;
  writer(buffer);
  return buffer.str();
}

Dataset LoadDataset(const PipelineConfig& config) {
  Dataset data;
  data.accounts = ReadAccountsJsonl(fs::path(
      RequireInput("", config.paths.accounts, "accounts file")));
  data.edges = ReadEdgesTsv(fs::path(RequireInput("", config.paths.edges, "edges file")));
  data.labels =
      ReadLabelsTsv(fs::path(RequireInput("", config.paths.labels, "labels file")));
  if (!config.paths.ground_truth.empty()) {
    data.ground_truth = ReadLabelsTsv(fs::path(
        RequireInput("", config.paths.ground_truth, "ground truth file")));
  }
  return data;
}

std::string PipelineReport(const Dataset& data, const WalkOutput& walk,
                           const PipelineConfig& config) {
  std::size_t labeled = 0;
  for (const auto& [id, label] : data.labels) labeled += IsKnown(label) ? 1 : 0;
  std::size_t unreachable = 0;
  std::size_t flagged = 0;
  std::map<std::string, Verdict> unlabeled_verdicts;
  for (NodeIndex u = 0; u < walk.graph.num_users(); ++u) {
    if (walk.scores.unreachable[u]) ++unreachable;
    const Verdict verdict = ScoreToLabel(walk.scores.scores[u], config.threshold);
    if (verdict == Verdict::kFake) ++flagged;
    if (!IsKnown(walk.graph.label(u))) {
      unlabeled_verdicts.emplace(walk.graph.id(u), verdict);
    }
  }
  Json doc = {
      {"accounts", data.accounts.size()},
      {"graph_users", walk.graph.num_users()},
      {"labeled", labeled},
      {"iterations", walk.scores.iteration_count},
      {"final_residual", walk.scores.final_residual},
      {"unreachable", unreachable},
      {"threshold", config.threshold},
      {"flagged_fake", flagged},
  };
  if (!data.ground_truth.empty()) {
    EvalReport report = Evaluate(unlabeled_verdicts, data.ground_truth,
                                 config.threshold);
    report.variant = "hybrid_unlabeled_accounts";
    doc["evaluation"] = Json::parse(ReportToJson(std::span(&report, 1)))[0];
  }
  return doc.dump(2) + "\n";
}

}  // namespace

int RunCli(std::span<const std::string> args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Hybrid SVM + SybilWalk fake-account detection", "hybridsybil"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  app.add_option("--config", config_path, "flat section.key = value config file");
  app.add_option("--seed", seed, "seed for every random component");
  app.add_flag("--verbose", verbose, "progress messages on stderr");

  std::vector<std::pair<std::string, std::string>> overrides;
  for (const ConfigKey& key : ConfigKeys()) {
    const std::string name(key.name);
    app.add_option_function<std::string>(
           "--" + name,
           [&overrides, name](const std::string& value) {
             overrides.emplace_back(name, value);
           },
           std::string(key.help))
        ->group("Config overrides");
  }

  std::string output;
  std::vector<std::string> inputs;
  auto* extract = app.add_subcommand("extract", "accounts JSONL -> features CSV");
  extract->add_option("accounts", inputs, "accounts JSONL")->expected(0, 1);
  auto* train = app.add_subcommand("train", "features CSV + labels TSV -> model JSON");
  train->add_option("inputs", inputs, "features CSV, labels TSV")->expected(0, 2);
  auto* score = app.add_subcommand("score", "model JSON + features CSV -> priors CSV");
  score->add_option("inputs", inputs, "model JSON, features CSV")->expected(0, 2);
  auto* walk = app.add_subcommand("walk", "edges + labels + priors -> scores CSV");
  walk->add_option("inputs", inputs, "edges TSV, labels TSV, priors CSV")
      ->expected(0, 3);
  auto* pipeline = app.add_subcommand("pipeline", "end-to-end run from config paths");
  auto* synth = app.add_subcommand("synth", "write a synthetic dataset");
  auto* eval = app.add_subcommand("eval", "k-fold comparison of pipeline variants");
  std::vector<std::string> variant_names = {"svm_only", "hybrid",
                                            "uniform_prior_hybrid"};
  eval->add_option("--variants", variant_names, "variants to run")
      ->check(CLI::IsMember({"svm_only", "hybrid", "uniform_prior_hybrid"}));
  for (CLI::App* sub : {extract, train, score, walk, pipeline, synth, eval}) {
    sub->add_option("-o,--output", output, "output path (stdout when omitted)");
  }

  std::vector<std::string> argv;
  argv.reserve(args.size());
  for (auto it = args.rbegin(); it != args.rend(); ++it) argv.push_back(*it);
  try {
    app.parse(std::move(argv));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  const Logger log(err, verbose);
  try {
    PipelineConfig config;
    if (!config_path.empty()) {
      ApplyConfigText(config, ReadFile(RequireInput(config_path, "", "config file")));
    }
    if (seed) SetAllSeeds(config, *seed);
    for (const auto& [key, value] : overrides) SetConfigValue(config, key, value);
    config.Validate();
    auto input = [&](std::size_t i) {
      return i < inputs.size() ? inputs[i] : std::string();
    };

    if (extract->parsed()) {
      const auto accounts = ReadAccountsJsonl(
          fs::path(RequireInput(input(0), config.paths.accounts, "accounts file")));
      const auto vectors = ExtractAll(accounts);
      log("extracted ", vectors.size(), " feature vectors");
      Emit(output.empty() ? config.paths.features : output,
           ToText([&](std::ostream& s) { WriteFeaturesCsv(s, vectors); }), out);
    } else if (train->parsed()) {
      const std::string features_path =
          RequireInput(input(0), config.paths.features, "features file");
      const std::string labels_path =
          RequireInput(input(1), config.paths.labels, "labels file");
      const auto vectors = ReadFeaturesCsv(fs::path(features_path));
      const auto labels = ReadLabelsTsv(fs::path(labels_path));
      const LinearModel model = TrainFromLabels(vectors, labels, config.train);
      log("trained on ", labels.size(), " labels");
      Emit(output.empty() ? config.paths.model : output, SerializeModel(model), out);
    } else if (score->parsed()) {
      const LinearModel model = LoadModel(
          RequireInput(input(0), config.paths.model, "model file"));
      const auto vectors = ReadFeaturesCsv(
          fs::path(RequireInput(input(1), config.paths.features, "features file")));
      const auto priors = ScoreAll(model, vectors);
      Emit(output.empty() ? config.paths.priors : output,
           ToText([&](std::ostream& s) { WritePriorsCsv(s, priors); }), out);
    } else if (walk->parsed()) {
      const auto edges = ReadEdgesTsv(
          fs::path(RequireInput(input(0), config.paths.edges, "edges file")));
      const auto labels = ReadLabelsTsv(
          fs::path(RequireInput(input(1), config.paths.labels, "labels file")));
      const auto priors = ReadPriorsCsv(
          fs::path(RequireInput(input(2), config.paths.priors, "priors file")));
      const WalkOutput result = RunWalk(edges, labels, priors, config);
      log("walk stopped after ", result.scores.iteration_count,
          " iterations, residual ", result.scores.final_residual);
      Emit(output.empty() ? config.paths.scores : output,
           ToText([&](std::ostream& s) {
             WriteScoresCsv(s, result.graph, result.scores);
           }),
           out);
    } else if (pipeline->parsed()) {
      if (config.paths.scores.empty() && output.empty()) {
        throw Error(ErrorCode::kConfig, "pipeline needs paths.scores or -o");
      }
      const Dataset data = LoadDataset(config);
      const auto vectors = ExtractAll(data.accounts);
      if (!config.paths.features.empty()) {
        WriteFile(config.paths.features,
                  ToText([&](std::ostream& s) { WriteFeaturesCsv(s, vectors); }));
      }
      const LinearModel model = TrainFromLabels(vectors, data.labels, config.train);
      if (!config.paths.model.empty()) {
        WriteFile(config.paths.model, SerializeModel(model));
      }
      const auto priors = ScoreAll(model, vectors);
      if (!config.paths.priors.empty()) {
        WriteFile(config.paths.priors,
                  ToText([&](std::ostream& s) { WritePriorsCsv(s, priors); }));
      }
      const WalkOutput result = RunWalk(data.edges, data.labels, priors, config);
      log("walk stopped after ", result.scores.iteration_count, " iterations");
      Emit(output.empty() ? config.paths.scores : output,
           ToText([&](std::ostream& s) {
             WriteScoresCsv(s, result.graph, result.scores);
           }),
           out);
      const std::string report = PipelineReport(data, result, config);
      if (!config.paths.report.empty()) {
        WriteFile(config.paths.report, report);
      } else {
        log("no paths.report set, report not written");
      }
    } else if (synth->parsed()) {
      const fs::path dir = output.empty() ? config.paths.out_dir : output;
      if (dir.empty()) throw Error(ErrorCode::kConfig, "synth needs paths.out_dir or -o");
      fs::create_directories(dir);
      const Dataset data = Generate(config.synth);
      WriteFile(dir / "accounts.jsonl", ToText([&](std::ostream& s) {
                  WriteAccountsJsonl(s, data.accounts);
                }));
      WriteFile(dir / "edges.tsv",
                ToText([&](std::ostream& s) { WriteEdgesTsv(s, data.edges); }));
      WriteFile(dir / "labels.tsv",
                ToText([&](std::ostream& s) { WriteLabelsTsv(s, data.labels); }));
      WriteFile(dir / "ground_truth.tsv", ToText([&](std::ostream& s) {
                  WriteLabelsTsv(s, data.ground_truth);
                }));
      log("wrote ", data.accounts.size(), " accounts and ", data.edges.size(),
          " edges to ", dir.string());
    } else if (eval->parsed()) {
      const Dataset data = LoadDataset(config);
      std::vector<EvalReport> reports;
      for (const std::string& name : variant_names) {
        PipelineVariant variant = PipelineVariant::kHybrid;
        if (name == "svm_only") variant = PipelineVariant::kSvmOnly;
        if (name == "uniform_prior_hybrid") {
          variant = PipelineVariant::kUniformPriorHybrid;
        }
        reports.push_back(RunExperiment(data, variant, config.experiment()).report);
        out << ReportToTable(reports.back()) << "\n";
      }
      const std::string json = ReportToJson(reports);
      const std::string path = output.empty() ? config.paths.report : output;
      if (!path.empty()) WriteFile(path, json);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error (io): " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace hybridsybil
