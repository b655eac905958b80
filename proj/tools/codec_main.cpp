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

// codec: train, encode and decode the discrete action tokenizer.

#include <iostream>

#include <CLI11.hpp>

#include "forge/codec/codec.hpp"
#include "forge/common/error.hpp"
#include "line_io.hpp"

using namespace forge;

int main(int argc, char** argv) {
  CLI::App app{"codec: action chunk <-> token ids"};
  app.require_subcommand(1);

  std::string chunks_path, out_path, model_path, input = "-";
  codec::CodecConfig cfg;

  auto* train = app.add_subcommand("train", "fit scales and merges on a chunk corpus");
  train->add_option("--chunks", chunks_path, "one chunk per line (JSON frames x dims)")->required();
  train->add_option("--out", out_path, "model file")->required();
  train->add_option("--chunk-len", cfg.chunk_len, "frames per chunk")->capture_default_str();
  train->add_option("--step", cfg.step, "quantization step")->capture_default_str();
  train->add_option("--scale-quantile", cfg.scale_quantile, "robust scale quantile")->capture_default_str();
  train->add_option("--max-merges", cfg.max_merges, "merge budget")->capture_default_str();
  train->add_option("--min-pair-count", cfg.min_pair_count, "stop merging below this count")->capture_default_str();
  train->callback([&] {
    std::vector<codec::ActionChunk> corpus;
    const auto lines = tools::read_lines(chunks_path);
    for (std::size_t i = 0; i < lines.size(); ++i) corpus.push_back(tools::parse_chunk(lines[i], i + 1));
    if (!corpus.empty()) cfg.dims = corpus.front().dims();
    codec::TrainDiagnostics diag;
    const auto model = codec::train_codec(corpus, cfg, &diag);
    for (const auto& w : diag.warnings) std::cerr << "warning: " << w << "\n";
    codec::save_model(model, out_path);
    std::cerr << "trained on " << corpus.size() << " chunks: " << model.merges.size()
              << " merges, max error bound " << model.max_error_bound() << "\n";
  });

  auto* encode = app.add_subcommand("encode", "chunks -> token id lines");
  encode->add_option("--model", model_path, "model file")->required();
  encode->add_option("--chunk", input, "chunk lines, - for stdin")->capture_default_str();
  encode->callback([&] {
    const auto model = codec::load_model(model_path);
    const auto lines = tools::read_lines(input);
    std::size_t saturated = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      codec::EncodeStats stats;
      const auto seq = codec::encode_chunk(tools::parse_chunk(lines[i], i + 1), model, &stats);
      saturated += stats.saturated;
      for (std::size_t k = 0; k < seq.tokens.size(); ++k) std::cout << (k ? " " : "") << seq.tokens[k];
      std::cout << "\n";
    }
    if (saturated) std::cerr << "warning: " << saturated << " coefficients clipped\n";
  });

  auto* decode = app.add_subcommand("decode", "token id lines -> chunks");
  decode->add_option("--model", model_path, "model file")->required();
  decode->add_option("--tokens", input, "token lines, - for stdin")->capture_default_str();
  decode->callback([&] {
    const auto model = codec::load_model(model_path);
    const auto lines = tools::read_lines(input);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto ids = tools::parse_ids(lines[i], i + 1);
      codec::ActionTokenSeq seq;
      for (auto id : ids) {
        if (id < 0 || id >= codec::kVocabSize) {
          throw Error(ErrorCode::MalformedSequence, "line " + std::to_string(i + 1) + ": id out of range",
                      static_cast<std::int64_t>(i + 1));
        }
        seq.tokens.push_back(static_cast<int>(id));
      }
      std::cout << tools::chunk_json(codec::decode_tokens(seq, model)).dump() << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "codec: " << e.what() << "\n";
    return tools::exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "codec: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
