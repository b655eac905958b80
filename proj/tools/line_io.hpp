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

// Small shared helpers for the line-oriented tools.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/codec/codec.hpp"
#include "forge/common/error.hpp"

namespace forge::tools {

// Non-blank lines of a file, or of stdin for "-".
inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream file;
  if (path != "-") {
    file.open(path);
    if (!file) throw Error(ErrorCode::IoError, "cannot open " + path);
  }
  std::istream& in = path == "-" ? std::cin : file;
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  }
  return out;
}

inline std::vector<std::int64_t> parse_ids(const std::string& line, std::size_t line_no) {
  std::istringstream ss(line);
  std::vector<std::int64_t> ids;
  std::string word;
  while (ss >> word) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(word, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != word.size()) {
      throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(line_no) + ": '" + word + "' is not an id",
                  static_cast<std::int64_t>(line_no));
    }
    ids.push_back(v);
  }
  return ids;
}

// A chunk line: [[...], ...] frames x dims, or {"chunk": [[...]]}.
inline codec::ActionChunk parse_chunk(const std::string& line, std::size_t line_no) {
  auto j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_object() && j.contains("chunk")) j = j["chunk"];
  const auto bad = [&](const std::string& why) {
    return Error(ErrorCode::ShapeMismatch, "line " + std::to_string(line_no) + ": " + why,
                 static_cast<std::int64_t>(line_no));
  };
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw bad("expected an array of frames");
  const auto dims = j[0].size();
  std::vector<double> values;
  for (const auto& frame : j) {
    if (!frame.is_array() || frame.size() != dims) throw bad("frames differ in length");
    for (const auto& v : frame) {
      if (!v.is_number()) throw bad("non-numeric action value");
      values.push_back(v.get<double>());
    }
  }
  return codec::ActionChunk(j.size(), dims, std::move(values));
}

inline nlohmann::json chunk_json(const codec::ActionChunk& c) {
  auto out = nlohmann::json::array();
  for (std::size_t t = 0; t < c.frames(); ++t) {
    auto row = nlohmann::json::array();
    for (std::size_t d = 0; d < c.dims(); ++d) row.push_back(c.at(t, d));
    out.push_back(row);
  }
  return out;
}

inline int exit_for(const Error& e) {
  return e.code() == ErrorCode::IoError || e.code() == ErrorCode::NotFound || e.code() == ErrorCode::BadModelFile ? 2 : 1;
}

}  // namespace forge::tools
