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

#ifndef HYBRIDSYBIL_IO_H_
#define HYBRIDSYBIL_IO_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hybridsybil/dataset.h"
#include "hybridsybil/features.h"
#include "hybridsybil/graph.h"
#include "hybridsybil/label.h"
#include "hybridsybil/propagation.h"

namespace hybridsybil {

// Account records, one JSON object per line. Blank lines are skipped. Errors
// name the 1-based line number.
std::vector<AccountRecord> ReadAccountsJsonl(std::istream& in);
std::vector<AccountRecord> ReadAccountsJsonl(const std::filesystem::path& path);
void WriteAccountsJsonl(std::ostream& out,
                        std::span<const AccountRecord> accounts);

// Header `account_id,f0,...,f17`.
void WriteFeaturesCsv(std::ostream& out,
                      std::span<const FeatureVector> vectors);
std::vector<FeatureVector> ReadFeaturesCsv(std::istream& in);
std::vector<FeatureVector> ReadFeaturesCsv(const std::filesystem::path& path);

// `u<TAB>v<TAB>mutual_friends`; `#` lines are comments.
std::vector<EdgeObservation> ReadEdgesTsv(std::istream& in);
std::vector<EdgeObservation> ReadEdgesTsv(const std::filesystem::path& path);
void WriteEdgesTsv(std::ostream& out, std::span<const EdgeObservation> edges);

// `node<TAB>label`; `#` lines are comments.
std::map<std::string, Label> ReadLabelsTsv(std::istream& in);
std::map<std::string, Label> ReadLabelsTsv(const std::filesystem::path& path);
void WriteLabelsTsv(std::ostream& out,
                    const std::map<std::string, Label>& labels);

// SVM priors, `account_id,score` with round-trip precision.
std::map<std::string, double> ReadPriorsCsv(std::istream& in);
std::map<std::string, double> ReadPriorsCsv(const std::filesystem::path& path);
void WritePriorsCsv(std::ostream& out,
                    const std::map<std::string, double>& priors);

// Final scores, `account_id,score,iterations,flag`, 9 significant digits.
void WriteScoresCsv(std::ostream& out, const LabeledSocialGraph& graph,
                    const ScoreVector& scores);

// Shared by the writers: %.17g and %.9g renderings of a double.
std::string FormatExact(double value);
std::string FormatScore(double value);

// Reads a whole file; throws kIo when it cannot be opened.
std::string ReadFile(const std::filesystem::path& path);
// Throws kIo when the file cannot be written.
void WriteFile(const std::filesystem::path& path, const std::string& content);

}  // namespace hybridsybil

#endif  // HYBRIDSYBIL_IO_H_
