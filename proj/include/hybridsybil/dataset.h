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

#ifndef HYBRIDSYBIL_DATASET_H_
#define HYBRIDSYBIL_DATASET_H_

#include <map>
#include <string>
#include <vector>

#include "hybridsybil/features.h"
#include "hybridsybil/graph.h"
#include "hybridsybil/label.h"

namespace hybridsybil {

// Everything one experiment needs: account activity, the social edges, the
// labels an operator knows, and the full ground truth used only for scoring.
struct Dataset {
  std::vector<AccountRecord> accounts;
  std::vector<EdgeObservation> edges;
  std::map<std::string, Label> labels;
  std::map<std::string, Label> ground_truth;
};

}  // namespace hybridsybil

#endif  // HYBRIDSYBIL_DATASET_H_
