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

#include "forge/dataset/review.hpp"

#include <algorithm>
#include <map>

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/common/rng.hpp"

namespace forge::dataset {

using episode::InstructionType;
using nlohmann::json;

namespace {

ReviewItem make_item(const Manifest& m, const episode::Episode& e) {
  return ReviewItem{e.id,
                    e.instruction_type,
                    e.original_instruction,
                    e.conversation,
                    std::filesystem::absolute(m.resolve(e.audio_ref)).lexically_normal().string(),
                    false};
}

}  // namespace

ReviewBatch sample_for_review(const Manifest& manifest, std::size_t n, std::uint64_t seed,
                              bool stratify_by_type) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample size must be at least 1");
  if (n > manifest.size()) {
    throw Error(ErrorCode::SampleTooLarge, "asked for " + std::to_string(n) + " of " +
                                               std::to_string(manifest.size()) + " episodes");
  }
  Rng rng(seed);
  ReviewBatch batch{seed, stratify_by_type, {}};
  std::vector<const episode::Episode*> picked;

  if (!stratify_by_type) {
    for (const auto& [id, e] : manifest.episodes()) picked.push_back(&e);
    rng.shuffle(std::span(picked));
    picked.resize(n);
  } else {
    std::map<InstructionType, std::vector<const episode::Episode*>> pools;
    for (const auto& [id, e] : manifest.episodes()) pools[e.instruction_type].push_back(&e);
    for (auto& [t, pool] : pools) rng.shuffle(std::span(pool));

    const auto& types = episode::kAllInstructionTypes;
    std::map<InstructionType, std::size_t> quota;
    for (auto t : types) quota[t] = n / types.size();
    std::vector<InstructionType> order(types.begin(), types.end());
    rng.shuffle(std::span(order));
    for (std::size_t k = 0; k < n % types.size(); ++k) ++quota[order[k]];
    // Hand shortfalls of small pools to types that still have episodes, in
    // the seeded order.
    std::size_t spare = 0;
    for (auto t : types) {
      const auto have = pools[t].size();
      if (quota[t] > have) {
        spare += quota[t] - have;
        quota[t] = have;
      }
    }
    while (spare > 0) {
      for (auto t : order) {
        if (spare > 0 && quota[t] < pools[t].size()) {
          ++quota[t];
          --spare;
        }
      }
    }
    for (auto t : types) {
      for (std::size_t k = 0; k < quota[t]; ++k) picked.push_back(pools[t][k]);
    }
    rng.shuffle(std::span(picked));
  }
  for (const auto* e : picked) batch.items.push_back(make_item(manifest, *e));
  return batch;
}

void add_calibration(ReviewBatch& batch, const Manifest& manifest, const std::vector<std::string>& ids) {
  std::vector<ReviewItem> front;
  for (const auto& id : ids) {
    if (std::any_of(front.begin(), front.end(), [&](const ReviewItem& i) { return i.episode_id == id; })) continue;
    auto item = make_item(manifest, manifest.get(id));
    item.calibration = true;
    front.push_back(std::move(item));
  }
  std::erase_if(batch.items, [&](const ReviewItem& i) {
    return std::any_of(front.begin(), front.end(), [&](const ReviewItem& f) { return f.episode_id == i.episode_id; });
  });
  batch.items.insert(batch.items.begin(), front.begin(), front.end());
}

json to_json(const ReviewBatch& b) {
  json items = json::array();
  for (const auto& i : b.items) {
    items.push_back({{"episode_id", i.episode_id},
                     {"instruction_type", std::string(episode::to_string(i.instruction_type))},
                     {"original_instruction", i.original_instruction},
                     {"conversation", i.conversation},
                     {"audio_path", i.audio_path},
                     {"calibration", i.calibration}});
  }
  return json{{"seed", b.seed}, {"stratified", b.stratified}, {"items", items}};
}

ReviewBatch review_batch_from_json(const json& j) {
  try {
    ReviewBatch b;
    b.seed = j.value("seed", std::uint64_t{0});
    b.stratified = j.value("stratified", false);
    for (const auto& it : j.at("items")) {
      ReviewItem i;
      i.episode_id = it.at("episode_id").get<std::string>();
      const auto t = episode::parse_instruction_type(it.at("instruction_type").get<std::string>());
      if (!t) throw Error(ErrorCode::SchemaError, "unknown instruction_type in batch");
      i.instruction_type = *t;
      i.original_instruction = it.value("original_instruction", "");
      i.conversation = it.value("conversation", "");
      i.audio_path = it.value("audio_path", "");
      i.calibration = it.value("calibration", false);
      b.items.push_back(std::move(i));
    }
    return b;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("review batch: ") + e.what());
  }
}

ReviewBatch load_review_batch(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::NotFound, "no batch " + path.string());
  const auto j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::SchemaError, path.string() + " is not JSON");
  return review_batch_from_json(j);
}

void save_review_batch(const ReviewBatch& batch, const std::filesystem::path& path) {
  write_file_atomic(path, to_json(batch).dump(2) + "\n");
}

}  // namespace forge::dataset
