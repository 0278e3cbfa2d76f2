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

#include "hybridsybil/io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "json.hpp"

#include "hybridsybil/error.h"

namespace hybridsybil {
namespace {

using Json = nlohmann::json;

std::string LinePrefix(std::size_t line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

std::string_view TrimLine(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

bool ParseDouble(std::string_view text, double& out) {
  text = TrimLine(text);
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool ParseUnsigned(std::string_view text, std::uint64_t& out) {
  text = TrimLine(text);
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool IsSkippable(std::string_view line) {
  line = TrimLine(line);
  return line.empty() || line.front() == '#';
}

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return in;
}

AccountRecord ParseAccountLine(std::string_view line, std::size_t line_no) {
  Json doc;
  try {
    doc = Json::parse(line);
  } catch (const Json::parse_error&) {
    throw Error(ErrorCode::kMalformedRecord,
                LinePrefix(line_no) + "not a valid JSON object");
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kMalformedRecord,
                LinePrefix(line_no) + "not a valid JSON object");
  }
  AccountRecord record;
  auto id = doc.find("account_id");
  if (id == doc.end() || !id->is_string() || id->get<std::string>().empty()) {
    throw Error(ErrorCode::kMalformedRecord,
                LinePrefix(line_no) + "missing or empty account_id");
  }
  record.account_id = id->get<std::string>();
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key == "account_id") continue;
    if (key == "label") {
      if (it->is_null()) continue;
      std::optional<Label> label;
      if (it->is_string()) label = ParseLabel(it->get<std::string>());
      if (!label) {
        throw Error(ErrorCode::kMalformedRecord,
                    LinePrefix(line_no) + "label must be benign, sybil or unknown");
      }
      record.label = *label;
      continue;
    }
    auto index = FeatureIndex(key);
    if (!index) {
      throw Error(ErrorCode::kMalformedRecord,
                  LinePrefix(line_no) + "unknown field '" + key + "'");
    }
    if (it->is_null()) continue;
    if (it->is_number_unsigned()) {
      record.counts[*index] = it->get<std::uint64_t>();
    } else if (it->is_number_integer() || it->is_number_float()) {
      const double value = it->get<double>();
      if (!(value >= 0.0) || std::floor(value) != value ||
          !std::isfinite(value)) {
        throw Error(ErrorCode::kMalformedRecord,
                    LinePrefix(line_no) + "field '" + key +
                        "' must be a nonnegative integer count");
      }
      record.counts[*index] = static_cast<std::uint64_t>(value);
    } else {
      throw Error(ErrorCode::kMalformedRecord,
                  LinePrefix(line_no) + "field '" + key + "' must be a number");
    }
  }
  return record;
}

}  // namespace

std::string FormatExact(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string FormatScore(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path.string() + "' failed");
}

std::vector<AccountRecord> ReadAccountsJsonl(std::istream& in) {
  std::vector<AccountRecord> records;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (TrimLine(line).empty()) continue;
    AccountRecord record = ParseAccountLine(line, line_no);
    if (!seen.insert(record.account_id).second) {
      throw Error(ErrorCode::kMalformedRecord,
                  LinePrefix(line_no) + "duplicate account_id '" +
                      record.account_id + "'");
    }
    records.push_back(std::move(record));
  }
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no account records in input");
  }
  return records;
}

std::vector<AccountRecord> ReadAccountsJsonl(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return ReadAccountsJsonl(in);
}

void WriteAccountsJsonl(std::ostream& out,
                        std::span<const AccountRecord> accounts) {
  for (const AccountRecord& record : accounts) {
    Json doc;
    doc["account_id"] = record.account_id;
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      if (record.counts[f]) doc[std::string(kFeatureFields[f])] = *record.counts[f];
    }
    doc["label"] = std::string(LabelName(record.label));
    out << doc.dump() << "\n";
  }
}

void WriteFeaturesCsv(std::ostream& out,
                      std::span<const FeatureVector> vectors) {
  out << "account_id";
  for (std::size_t f = 0; f < kNumFeatures; ++f) out << ",f" << f;
  out << "\n";
  for (const FeatureVector& v : vectors) {
    out << v.account_id;
    for (double value : v.values) out << ',' << FormatExact(value);
    out << "\n";
  }
}

std::vector<FeatureVector> ReadFeaturesCsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<FeatureVector> vectors;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = TrimLine(line);
    if (row.empty()) continue;
    const auto cells = Split(row, ',');
    if (cells.size() != kNumFeatures + 1) {
      throw Error(ErrorCode::kMalformedData,
                  LinePrefix(line_no) + "expected " +
                      std::to_string(kNumFeatures + 1) + " columns");
    }
    if (header) {
      header = false;
      if (cells[0] != "account_id") {
        throw Error(ErrorCode::kMalformedData,
                    LinePrefix(line_no) + "missing features header");
      }
      continue;
    }
    FeatureVector v;
    v.account_id = std::string(cells[0]);
    if (v.account_id.empty()) {
      throw Error(ErrorCode::kMalformedData, LinePrefix(line_no) + "empty id");
    }
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      if (!ParseDouble(cells[f + 1], v.values[f]) || !std::isfinite(v.values[f])) {
        throw Error(ErrorCode::kMalformedData,
                    LinePrefix(line_no) + "bad value in column f" +
                        std::to_string(f));
      }
    }
    vectors.push_back(std::move(v));
  }
  if (vectors.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "features file has no rows");
  }
  return vectors;
}

std::vector<FeatureVector> ReadFeaturesCsv(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return ReadFeaturesCsv(in);
}

std::vector<EdgeObservation> ReadEdgesTsv(std::istream& in) {
  std::vector<EdgeObservation> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    const auto cells = Split(TrimLine(line), '\t');
    EdgeObservation edge;
    if (cells.size() != 3 || !ParseUnsigned(cells[2], edge.mutual_friend_count)) {
      throw Error(ErrorCode::kMalformedEdge,
                  LinePrefix(line_no) + "expected u<TAB>v<TAB>mutual_friends");
    }
    edge.u = std::string(cells[0]);
    edge.v = std::string(cells[1]);
    if (edge.u.empty() || edge.v.empty()) {
      throw Error(ErrorCode::kMalformedEdge, LinePrefix(line_no) + "empty endpoint");
    }
    if (edge.u == edge.v) {
      throw Error(ErrorCode::kMalformedEdge,
                  LinePrefix(line_no) + "self-loop on '" + edge.u + "'");
    }
    edges.push_back(std::move(edge));
  }
  return edges;
}

std::vector<EdgeObservation> ReadEdgesTsv(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return ReadEdgesTsv(in);
}

void WriteEdgesTsv(std::ostream& out, std::span<const EdgeObservation> edges) {
  out << "# u\tv\tmutual_friends\n";
  for (const EdgeObservation& e : edges) {
    out << e.u << '\t' << e.v << '\t' << e.mutual_friend_count << "\n";
  }
}

std::map<std::string, Label> ReadLabelsTsv(std::istream& in) {
  std::map<std::string, Label> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    const auto cells = Split(TrimLine(line), '\t');
    std::optional<Label> label;
    if (cells.size() == 2) label = ParseLabel(TrimLine(cells[1]));
    if (!label || cells[0].empty()) {
      throw Error(ErrorCode::kMalformedData,
                  LinePrefix(line_no) + "expected node<TAB>benign|sybil");
    }
    auto [it, inserted] = labels.emplace(std::string(cells[0]), *label);
    if (!inserted && it->second != *label) {
      throw Error(ErrorCode::kMalformedData,
                  LinePrefix(line_no) + "conflicting labels for '" + it->first + "'");
    }
  }
  return labels;
}

std::map<std::string, Label> ReadLabelsTsv(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return ReadLabelsTsv(in);
}

void WriteLabelsTsv(std::ostream& out,
                    const std::map<std::string, Label>& labels) {
  out << "# node\tlabel\n";
  for (const auto& [id, label] : labels) {
    out << id << '\t' << LabelName(label) << "\n";
  }
}

std::map<std::string, double> ReadPriorsCsv(std::istream& in) {
  std::map<std::string, double> priors;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = TrimLine(line);
    if (row.empty()) continue;
    const auto cells = Split(row, ',');
    if (header) {
      header = false;
      if (cells.size() < 2 || cells[0] != "account_id" || cells[1] != "score") {
        throw Error(ErrorCode::kMalformedData,
                    LinePrefix(line_no) + "expected header account_id,score");
      }
      continue;
    }
    double score = 0.0;
    if (cells.size() < 2 || cells[0].empty() || !ParseDouble(cells[1], score)) {
      throw Error(ErrorCode::kMalformedData,
                  LinePrefix(line_no) + "expected account_id,score");
    }
    if (!priors.emplace(std::string(cells[0]), score).second) {
      throw Error(ErrorCode::kMalformedData,
                  LinePrefix(line_no) + "duplicate id '" + std::string(cells[0]) + "'");
    }
  }
  return priors;
}

std::map<std::string, double> ReadPriorsCsv(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return ReadPriorsCsv(in);
}

void WritePriorsCsv(std::ostream& out,
                    const std::map<std::string, double>& priors) {
  out << "account_id,score\n";
  for (const auto& [id, score] : priors) {
    out << id << ',' << FormatExact(score) << "\n";
  }
}

void WriteScoresCsv(std::ostream& out, const LabeledSocialGraph& graph,
                    const ScoreVector& scores) {
  out << "account_id,score,iterations,flag\n";
  for (NodeIndex u = 0; u < graph.num_users(); ++u) {
    const bool unreachable = u < scores.unreachable.size() && scores.unreachable[u];
    out << graph.id(u) << ',' << FormatScore(scores.scores[u]) << ','
        << scores.iteration_count << ',' << (unreachable ? "unreachable" : "ok")
        << "\n";
  }
}

}  // namespace hybridsybil
