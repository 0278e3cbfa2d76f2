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

#ifndef HYBRIDSYBIL_FEATURES_H_
#define HYBRIDSYBIL_FEATURES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hybridsybil/label.h"

namespace hybridsybil {

inline constexpr std::size_t kNumFeatures = 18;

// Canonical feature order. Index i of every FeatureVector holds the quantity
// named kFeatureFields[i]; the same names are the JSON keys of an account
// record.
inline constexpr std::array<std::string_view, kNumFeatures> kFeatureFields = {
    "active_days",              // how long the account has been active
    "friend_count",             // friends
    "group_count",              // groups joined
    "post_count",               // own posts
    "wall_post_count",          // posts on the user's wall
    "tagged_in_post_count",     // posts the user is tagged in
    "reaction_count",           // reactions made
    "comment_count",            // comments made
    "likes_received",           // likes on the user's posts
    "comments_received",        // comments on the user's posts
    "shares_received",          // shares of the user's posts
    "tags_in_own_posts",        // tags (users and pages) on own posts
    "users_tagged_in_posts",    // users tagged in own posts
    "pages_tagged_in_posts",    // pages tagged in own posts
    "shared_post_count",        // posts the user shared
    "users_tagged_in_comments", // users tagged in own comments
    "tagged_in_comments_count", // times tagged in others' comments
    "pages_tagged_in_comments", // pages tagged in own comments
};

// Index of a field in kFeatureFields, or nullopt for unknown names.
std::optional<std::size_t> FeatureIndex(std::string_view field);

using FeatureArray = std::array<double, kNumFeatures>;

struct AccountRecord {
  std::string account_id;
  // Absent entries are fields hidden by privacy settings or never crawled.
  std::array<std::optional<std::uint64_t>, kNumFeatures> counts{};
  Label label = Label::kUnknown;
};

struct FeatureVector {
  std::string account_id;
  FeatureArray values{};
};

struct NormalizationStats {
  FeatureArray means{};
  FeatureArray stds{};  // strictly positive

  static NormalizationStats Identity();
};

// Missing counts are imputed as zero. Throws kMalformedRecord on an empty id.
FeatureVector ExtractFeatures(const AccountRecord& record);

// Per-feature mean and population standard deviation. Features with zero
// variance get std = 1 so normalization only centers them. Throws
// kEmptyDataset on an empty input.
NormalizationStats FitNormalization(std::span<const FeatureVector> vectors);

FeatureVector Normalize(const FeatureVector& vector,
                        const NormalizationStats& stats);
FeatureVector Denormalize(const FeatureVector& vector,
                          const NormalizationStats& stats);

struct FeatureGain {
  std::size_t feature_index = 0;
  double information_gain = 0.0;  // bits
};

// Information gain of the binary label after splitting every feature at its
// median (x <= median vs x > median). Sorted by descending gain, ties by
// index. Labels must be benign or sybil and both classes must be present,
// otherwise kDegenerateLabels.
std::vector<FeatureGain> RankFeaturesByEntropy(
    std::span<const FeatureVector> vectors, std::span<const Label> labels);

}  // namespace hybridsybil

#endif  // HYBRIDSYBIL_FEATURES_H_
