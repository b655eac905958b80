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

#include "forge/codec/codec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "forge/codec/dct.hpp"
#include "forge/common/error.hpp"
#include "forge/common/io.hpp"

namespace forge::codec {
namespace {

using nlohmann::json;

std::uint32_t pair_key(int a, int b) {
  return static_cast<std::uint32_t>(a) * kVocabSize + static_cast<std::uint32_t>(b);
}

void check_shape(const ActionChunk& chunk, std::size_t frames, std::size_t dims) {
  if (chunk.frames() != frames || chunk.dims() != dims) {
    throw Error(ErrorCode::ShapeMismatch,
                "chunk is " + std::to_string(chunk.frames()) + "x" + std::to_string(chunk.dims()) +
                    ", expected " + std::to_string(frames) + "x" + std::to_string(dims));
  }
}

void check_finite(const ActionChunk& chunk) {
  for (double v : chunk.values()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "chunk has a non-finite entry");
  }
}

// Replaces every non-overlapping occurrence of (a, b), scanning left to right.
void merge_pair(std::vector<int>& seq, int a, int b, int id) {
  std::size_t w = 0;
  for (std::size_t r = 0; r < seq.size();) {
    if (r + 1 < seq.size() && seq[r] == a && seq[r + 1] == b) {
      seq[w++] = id;
      r += 2;
    } else {
      seq[w++] = seq[r++];
    }
  }
  seq.resize(w);
}

}  // namespace

ActionChunk::ActionChunk(std::size_t frames, std::size_t dims, std::vector<double> values)
    : frames_(frames), dims_(dims), values_(std::move(values)) {
  if (values_.size() != frames * dims) {
    throw Error(ErrorCode::ShapeMismatch, "value count does not match frames x dims");
  }
}

double CodecModel::error_bound(std::size_t dim) const {
  return step * scales.at(dim) * std::sqrt(static_cast<double>(chunk_len)) / 2.0;
}

double CodecModel::max_error_bound() const {
  double m = 0.0;
  for (std::size_t d = 0; d < dims; ++d) m = std::max(m, error_bound(d));
  return m;
}

std::vector<int> quantize_levels(const ActionChunk& chunk, const CodecModel& model,
                                 EncodeStats* stats) {
  check_shape(chunk, model.chunk_len, model.dims);
  check_finite(chunk);
  const std::size_t n = model.chunk_len, dims = model.dims;
  const Dct dct(n);
  std::vector<int> levels(n * dims);
  std::vector<double> column(n), coef(n);
  for (std::size_t d = 0; d < dims; ++d) {
    for (std::size_t t = 0; t < n; ++t) column[t] = chunk.at(t, d);
    dct.forward(column, coef);
    for (std::size_t k = 0; k < n; ++k) {
      // Mid-tread: zero is a reconstruction level.
      double level = std::round(coef[k] / (model.scales[d] * model.step));
      if (std::abs(level) > kMaxLevel) {
        level = std::copysign(kMaxLevel, level);
        if (stats) ++stats->saturated;
      }
      levels[k * dims + d] = static_cast<int>(level);
    }
  }
  return levels;
}

std::vector<int> apply_merges(std::vector<int> symbols, const CodecModel& model) {
  std::unordered_map<std::uint32_t, int> rank;
  rank.reserve(model.merges.size() * 2);
  for (std::size_t i = 0; i < model.merges.size(); ++i) {
    rank.emplace(pair_key(model.merges[i].first, model.merges[i].second), static_cast<int>(i));
  }
  // Lowest-rank pair first; equivalent to replaying the merges in order.
  while (symbols.size() > 1) {
    int best = -1;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      const auto it = rank.find(pair_key(symbols[i], symbols[i + 1]));
      if (it != rank.end() && (best < 0 || it->second < best)) best = it->second;
    }
    if (best < 0) break;
    const auto [a, b] = model.merges[static_cast<std::size_t>(best)];
    merge_pair(symbols, a, b, kFirstMergeId + best);
  }
  return symbols;
}

std::vector<int> expand_tokens(std::span<const int> ids, const CodecModel& model) {
  const int limit = kFirstMergeId + static_cast<int>(model.merges.size());
  std::vector<int> out;
  std::vector<int> stack;
  for (int id : ids) {
    stack.push_back(id);
    while (!stack.empty()) {
      const int top = stack.back();
      stack.pop_back();
      if (top >= 0 && top < kBaseSize) {
        out.push_back(top);
      } else if (top >= kFirstMergeId && top < limit) {
        const auto [a, b] = model.merges[static_cast<std::size_t>(top - kFirstMergeId)];
        stack.push_back(b);
        stack.push_back(a);
      } else {
        throw Error(ErrorCode::MalformedSequence, "token " + std::to_string(top) +
                                                      " is not a payload symbol of this model");
      }
    }
  }
  return out;
}

CodecModel train_codec(std::span<const ActionChunk> corpus, const CodecConfig& config,
                       TrainDiagnostics* diagnostics) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "no training chunks");
  if (config.step <= 0.0) throw Error(ErrorCode::InvalidArgument, "quantization step must be > 0");
  const std::size_t n = config.chunk_len, dims = config.dims;
  for (const auto& c : corpus) {
    check_shape(c, n, dims);
    check_finite(c);
  }

  CodecModel model;
  model.version = kCodecVersion;
  model.chunk_len = n;
  model.dims = dims;
  model.step = config.step;
  model.scales.assign(dims, 1.0);

  std::vector<double> mags;
  mags.reserve(corpus.size() * n);
  for (std::size_t d = 0; d < dims; ++d) {
    mags.clear();
    double lo = corpus[0].at(0, d), hi = lo;
    for (const auto& c : corpus) {
      for (std::size_t t = 0; t < n; ++t) {
        const double v = c.at(t, d);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        mags.push_back(std::abs(v));
      }
    }
    if (lo == hi) {
      model.scales[d] = 1.0;
      if (diagnostics) {
        diagnostics->degenerate_dims.push_back(d);
        diagnostics->warnings.push_back("DegenerateDimension:" + std::to_string(d));
      }
      continue;
    }
    std::sort(mags.begin(), mags.end());
    const auto idx = static_cast<std::size_t>(config.scale_quantile * static_cast<double>(mags.size() - 1));
    double robust = mags[idx];
    if (robust <= 0.0) robust = mags.back();
    // Orthonormal DCT coefficients of a column bounded by `robust` are
    // bounded by sqrt(N) * robust, so scaled coefficients land in [-1, 1].
    model.scales[d] = std::sqrt(static_cast<double>(n)) * robust;
  }

  // Deduplicated base-symbol streams with multiplicities.
  std::map<std::vector<int>, std::uint64_t> unique;
  for (const auto& c : corpus) {
    auto levels = quantize_levels(c, model);
    for (int& l : levels) l += kMaxLevel;
    ++unique[std::move(levels)];
  }
  std::vector<std::vector<int>> seqs;
  std::vector<std::uint64_t> weights;
  for (auto& [seq, w] : unique) {
    seqs.push_back(seq);
    weights.push_back(w);
  }

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(kVocabSize) * kVocabSize, 0);
  std::vector<std::uint32_t> touched;
  const std::size_t max_merges = std::min(config.max_merges, kMaxMerges);
  while (model.merges.size() < max_merges) {
    touched.clear();
    for (std::size_t s = 0; s < seqs.size(); ++s) {
      const auto& seq = seqs[s];
      for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        const auto key = pair_key(seq[i], seq[i + 1]);
        if (counts[key] == 0) touched.push_back(key);
        counts[key] += weights[s];
      }
    }
    std::uint64_t best_count = 0;
    std::uint32_t best_key = 0;
    for (auto key : touched) {
      const auto c = counts[key];
      if (c > best_count || (c == best_count && key < best_key)) {
        best_count = c;
        best_key = key;
      }
      counts[key] = 0;
    }
    if (best_count < config.min_pair_count || best_count == 0) break;
    const int a = static_cast<int>(best_key / kVocabSize);
    const int b = static_cast<int>(best_key % kVocabSize);
    const int id = kFirstMergeId + static_cast<int>(model.merges.size());
    model.merges.emplace_back(a, b);
    for (auto& seq : seqs) merge_pair(seq, a, b, id);
  }
  return model;
}

ActionTokenSeq encode_chunk(const ActionChunk& chunk, const CodecModel& model,
                            EncodeStats* stats) {
  auto symbols = quantize_levels(chunk, model, stats);
  for (int& s : symbols) s += kMaxLevel;
  symbols = apply_merges(std::move(symbols), model);
  ActionTokenSeq seq;
  seq.tokens.reserve(symbols.size() + 2);
  seq.tokens.push_back(kBosAct);
  seq.tokens.insert(seq.tokens.end(), symbols.begin(), symbols.end());
  seq.tokens.push_back(kEosAct);
  return seq;
}

ActionChunk decode_tokens(const ActionTokenSeq& seq, const CodecModel& model) {
  const auto& toks = seq.tokens;
  if (toks.size() < 2 || toks.front() != kBosAct || toks.back() != kEosAct) {
    throw Error(ErrorCode::MalformedSequence, "sequence must be framed by BOS_ACT ... EOS_ACT");
  }
  for (std::size_t i = 1; i + 1 < toks.size(); ++i) {
    if (toks[i] < 0 || toks[i] >= kVocabSize) {
      throw Error(ErrorCode::MalformedSequence, "token id out of range", static_cast<std::int64_t>(i));
    }
    if (toks[i] == kBosAct || toks[i] == kEosAct) {
      throw Error(ErrorCode::MalformedSequence, "control symbol inside payload",
                  static_cast<std::int64_t>(i));
    }
  }
  const auto symbols =
      expand_tokens(std::span<const int>(toks).subspan(1, toks.size() - 2), model);
  const std::size_t n = model.chunk_len, dims = model.dims;
  if (symbols.size() != n * dims) {
    throw Error(ErrorCode::TruncatedPayload, "payload has " + std::to_string(symbols.size()) +
                                                 " coefficients, expected " +
                                                 std::to_string(n * dims));
  }
  const Dct dct(n);
  ActionChunk out(n, dims);
  std::vector<double> coef(n), column(n);
  for (std::size_t d = 0; d < dims; ++d) {
    for (std::size_t k = 0; k < n; ++k) {
      const int level = symbols[k * dims + d] - kMaxLevel;
      coef[k] = static_cast<double>(level) * model.step * model.scales[d];
    }
    dct.inverse(coef, column);
    for (std::size_t t = 0; t < n; ++t) out.at(t, d) = column[t];
  }
  return out;
}

json to_json(const CodecModel& model) {
  json merges = json::array();
  for (std::size_t i = 0; i < model.merges.size(); ++i) {
    merges.push_back({model.merges[i].first, model.merges[i].second,
                      kFirstMergeId + static_cast<int>(i)});
  }
  return json{{"version", model.version},
              {"N", model.chunk_len},
              {"D", model.dims},
              {"scales", model.scales},
              {"q", model.step},
              {"ordering", "frequency-major"},
              {"base_alphabet", {{"size", kBaseSize}, {"min_level", -kMaxLevel}}},
              {"vocab_size", kVocabSize},
              {"bos_act", kBosAct},
              {"eos_act", kEosAct},
              {"merges", merges}};
}

CodecModel codec_model_from_json(const json& j) {
  try {
    CodecModel m;
    m.version = j.at("version").get<std::string>();
    if (m.version != kCodecVersion) {
      throw Error(ErrorCode::BadModelFile, "unsupported codec version " + m.version);
    }
    m.chunk_len = j.at("N").get<std::size_t>();
    m.dims = j.at("D").get<std::size_t>();
    m.scales = j.at("scales").get<std::vector<double>>();
    m.step = j.at("q").get<double>();
    if (j.at("vocab_size").get<int>() != kVocabSize ||
        j.at("base_alphabet").at("size").get<int>() != kBaseSize) {
      throw Error(ErrorCode::BadModelFile, "vocabulary layout mismatch");
    }
    if (m.scales.size() != m.dims || m.chunk_len == 0 || !(m.step > 0.0)) {
      throw Error(ErrorCode::BadModelFile, "inconsistent model header");
    }
    for (const auto& row : j.at("merges")) {
      const int a = row.at(0).get<int>(), b = row.at(1).get<int>(), id = row.at(2).get<int>();
      const int expected = kFirstMergeId + static_cast<int>(m.merges.size());
      // Acyclic by construction: operands must already exist.
      if (id != expected || a >= id || b >= id || a == kBosAct || a == kEosAct ||
          b == kBosAct || b == kEosAct || a < 0 || b < 0) {
        throw Error(ErrorCode::BadModelFile, "invalid merge entry for id " + std::to_string(id));
      }
      m.merges.emplace_back(a, b);
    }
    if (m.merges.size() > kMaxMerges) throw Error(ErrorCode::BadModelFile, "too many merges");
    return m;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::BadModelFile, ex.what());
  }
}

void save_model(const CodecModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, to_json(model).dump() + "\n");
}

CodecModel load_model(const std::filesystem::path& path) {
  try {
    return codec_model_from_json(json::parse(read_file(path)));
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::BadModelFile, ex.what());
  }
}

}  // namespace forge::codec
