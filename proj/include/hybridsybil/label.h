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

#ifndef HYBRIDSYBIL_LABEL_H_
#define HYBRIDSYBIL_LABEL_H_

#include <optional>
#include <string_view>

namespace hybridsybil {

enum class Label { kBenign, kSybil, kUnknown };

std::string_view LabelName(Label label);

// Accepts "benign", "sybil" and "unknown"; anything else is nullopt.
std::optional<Label> ParseLabel(std::string_view text);

inline bool IsKnown(Label label) { return label != Label::kUnknown; }

}  // namespace hybridsybil

#endif  // HYBRIDSYBIL_LABEL_H_
