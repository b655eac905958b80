// Copyright 2026 The Forge Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/dataset/manifest.hpp"

namespace forge::dataset {

// What an annotator sees for one sampled episode.
struct ReviewItem {
  std::string episode_id;
  episode::InstructionType instruction_type = episode::InstructionType::Dyadic;
  std::string original_instruction;
  std::string conversation;  // canonical markup
  std::string audio_path;    // absolute
  bool calibration = false;  // excluded from agreement rates

  bool operator==(const ReviewItem&) const = default;
};

struct ReviewBatch {
  std::uint64_t seed = 0;
  bool stratified = false;
  std::vector<ReviewItem> items;

  bool operator==(const ReviewBatch&) const = default;
};

// Deterministic for fixed (manifest, n, seed). With stratification the batch
// takes n/7 episodes of every type, the n%7 remainder going to seeded-random
// types; a type with too few episodes gives its shortfall to the others.
// Throws SampleTooLarge (n > episodes) or InvalidArgument (n == 0).
ReviewBatch sample_for_review(const Manifest& manifest, std::size_t n, std::uint64_t seed,
                              bool stratify_by_type);

// Flags `ids` as calibration items and moves them, in the given order, to the
// front of the batch (adding any that were not sampled). Throws NotFound.
void add_calibration(ReviewBatch& batch, const Manifest& manifest, const std::vector<std::string>& ids);

nlohmann::json to_json(const ReviewBatch& batch);
// Throws SchemaError.
ReviewBatch review_batch_from_json(const nlohmann::json& j);
ReviewBatch load_review_batch(const std::filesystem::path& path);
void save_review_batch(const ReviewBatch& batch, const std::filesystem::path& path);

}  // namespace forge::dataset
