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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace forge::codec {

// Token id layout (vocabulary of exactly 2048 ids):
//   [0, 255)     base symbols, quantized level v in [-127, 127] maps to v + 127
//   255          BOS_ACT
//   256          EOS_ACT
//   [257, 2048)  BPE merge symbols, in merge order; ids beyond the learned
//                merges are reserved and never emitted
inline constexpr int kVocabSize = 2048;
inline constexpr int kMaxLevel = 127;
inline constexpr int kBaseSize = 2 * kMaxLevel + 1;
inline constexpr int kBosAct = kBaseSize;
inline constexpr int kEosAct = kBaseSize + 1;
inline constexpr int kFirstMergeId = kBaseSize + 2;
inline constexpr std::size_t kMaxMerges = kVocabSize - kFirstMergeId;

inline constexpr std::size_t kDefaultChunkLen = 6;
inline constexpr std::size_t kDefaultDims = 7;

// N frames x D dims, row-major.
class ActionChunk {
 public:
  ActionChunk() = default;
  ActionChunk(std::size_t frames, std::size_t dims)
      : frames_(frames), dims_(dims), values_(frames * dims, 0.0) {}
  ActionChunk(std::size_t frames, std::size_t dims, std::vector<double> values);

  std::size_t frames() const { return frames_; }
  std::size_t dims() const { return dims_; }
  double& at(std::size_t t, std::size_t d) { return values_[t * dims_ + d]; }
  double at(std::size_t t, std::size_t d) const { return values_[t * dims_ + d]; }
  std::span<const double> values() const { return values_; }

  bool operator==(const ActionChunk&) const = default;

 private:
  std::size_t frames_ = 0;
  std::size_t dims_ = 0;
  std::vector<double> values_;
};

struct ActionTokenSeq {
  std::vector<int> tokens;

  bool operator==(const ActionTokenSeq&) const = default;
};

struct CodecConfig {
  std::size_t chunk_len = kDefaultChunkLen;
  std::size_t dims = kDefaultDims;
  double step = 0.01;             // quantization step in scaled coefficient units
  double scale_quantile = 0.999;  // robust max-abs of each action dimension
  std::size_t max_merges = kMaxMerges;
  std::size_t min_pair_count = 2;
};

struct CodecModel {
  std::string version;
  std::size_t chunk_len = 0;
  std::size_t dims = 0;
  // Coefficient scale per dimension: a DCT coefficient c quantizes to
  // round(c / (scales[d] * step)).
  std::vector<double> scales;
  double step = 0.01;
  std::vector<std::pair<int, int>> merges;  // merges[i] produces id kFirstMergeId + i

  int vocab_size() const { return kVocabSize; }
  // Per-dimension reconstruction bound: step * scales[d] * sqrt(N) / 2.
  double error_bound(std::size_t dim) const;
  double max_error_bound() const;

  bool operator==(const CodecModel&) const = default;
};

inline constexpr const char* kCodecVersion = "dct2-q-bpe/v1";

struct TrainDiagnostics {
  std::vector<std::string> warnings;  // e.g. "DegenerateDimension:6"
  std::vector<std::size_t> degenerate_dims;
};

struct EncodeStats {
  std::size_t saturated = 0;  // coefficients clipped to +-kMaxLevel
};

// Throws EmptyCorpus, ShapeMismatch (non-uniform chunks), NonFinite.
CodecModel train_codec(std::span<const ActionChunk> corpus, const CodecConfig& config,
                       TrainDiagnostics* diagnostics = nullptr);

// Throws ShapeMismatch, NonFinite.
ActionTokenSeq encode_chunk(const ActionChunk& chunk, const CodecModel& model,
                            EncodeStats* stats = nullptr);

// Throws MalformedSequence, TruncatedPayload.
ActionChunk decode_tokens(const ActionTokenSeq& seq, const CodecModel& model);

// Pipeline pieces, exposed for tests and tools.

// Quantized coefficient levels in stream order: frequency-major, dimensions
// interleaved within each frequency (lowest frequency first).
std::vector<int> quantize_levels(const ActionChunk& chunk, const CodecModel& model,
                                 EncodeStats* stats = nullptr);
std::vector<int> apply_merges(std::vector<int> symbols, const CodecModel& model);
// Inverse of apply_merges over payload ids (no BOS/EOS). Throws MalformedSequence.
std::vector<int> expand_tokens(std::span<const int> ids, const CodecModel& model);

nlohmann::json to_json(const CodecModel& model);
CodecModel codec_model_from_json(const nlohmann::json& j);
void save_model(const CodecModel& model, const std::filesystem::path& path);
CodecModel load_model(const std::filesystem::path& path);

}  // namespace forge::codec
