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

// demux: split joint text/action id streams into segments, or decode their
// action segments to chunks. One input line is one stream.

#include <iostream>

#include <CLI11.hpp>

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/demux/demux.hpp"
#include "line_io.hpp"

using namespace forge;
using nlohmann::json;

int main(int argc, char** argv) {
  CLI::App app{"demux: joint id streams -> text/action segments"};
  std::string layout_path, tokens = "-", model_path, emit = "segments";
  app.add_option("--layout", layout_path, "vocabulary layout (JSON)")->required();
  app.add_option("--tokens", tokens, "id streams, one per line, - for stdin")->capture_default_str();
  app.add_option("--model", model_path, "codec model (needed for --emit chunks)");
  app.add_option("--emit", emit, "segments | chunks")
      ->check(CLI::IsMember({"segments", "chunks"}))
      ->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const auto layout = demux::layout_from_json(json::parse(read_file(layout_path)));
    layout.validate();
    std::optional<codec::CodecModel> model;
    if (emit == "chunks") {
      if (model_path.empty()) throw Error(ErrorCode::InvalidArgument, "--emit chunks needs --model");
      model = codec::load_model(model_path);
    }
    const auto lines = tools::read_lines(tokens);
    for (std::size_t s = 0; s < lines.size(); ++s) {
      const auto ids = tools::parse_ids(lines[s], s + 1);
      std::vector<demux::Segment> segments;
      try {
        segments = demux::demux(ids, layout);
      } catch (const Error& e) {
        std::cerr << "demux: stream " << s << ", position " << e.index() << ": " << e.what() << "\n";
        return tools::exit_for(e);
      }
      if (emit == "segments") {
        for (std::size_t k = 0; k < segments.size(); ++k) {
          auto j = demux::to_json(segments[k]);
          j["stream"] = s;
          j["segment"] = k;
          std::cout << j.dump() << "\n";
        }
        continue;
      }
      const auto chunks = demux::decode_stream_actions(segments, *model);
      std::size_t c = 0;
      for (std::size_t k = 0; k < segments.size(); ++k) {
        if (segments[k].kind != demux::SegmentKind::Action) continue;
        std::cout << json{{"stream", s}, {"segment", k}, {"chunk", tools::chunk_json(chunks[c++])}}.dump() << "\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << "demux: " << e.what() << "\n";
    return tools::exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "demux: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
