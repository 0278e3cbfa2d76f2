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

#include "hybridsybil/error.h"
#include "hybridsybil/label.h"

namespace hybridsybil {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedRecord: return "malformed-record";
    case ErrorCode::kEmptyDataset: return "empty-dataset";
    case ErrorCode::kDegenerateLabels: return "degenerate-labels";
    case ErrorCode::kMalformedData: return "malformed-data";
    case ErrorCode::kModelFormat: return "model-format";
    case ErrorCode::kMalformedEdge: return "malformed-edge";
    case ErrorCode::kIsolatedNode: return "isolated-node";
    case ErrorCode::kMalformedPrior: return "malformed-prior";
    case ErrorCode::kCoverage: return "coverage";
    case ErrorCode::kUnreachableNode: return "unreachable-node";
    case ErrorCode::kNonabsorbingWalk: return "nonabsorbing-walk";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kNoData: return "no-data";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

std::string_view LabelName(Label label) {
  switch (label) {
    case Label::kBenign: return "benign";
    case Label::kSybil: return "sybil";
    case Label::kUnknown: return "unknown";
  }
  return "unknown";
}

std::optional<Label> ParseLabel(std::string_view text) {
  if (text == "benign") return Label::kBenign;
  if (text == "sybil") return Label::kSybil;
  if (text == "unknown") return Label::kUnknown;
  return std::nullopt;
}

}  // namespace hybridsybil
