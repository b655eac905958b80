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

#include "forge/script/templates.hpp"

#include <cctype>

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"

namespace forge::script {

TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::NotFound, "template directory " + dir.string() + " not found");
  }
  TemplateSet set;
  set.version_ = dir.filename().string();
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".txt") continue;
    set.templates_[entry.path().stem().string()] = read_file(entry.path());
  }
  return set;
}

const std::string& TemplateSet::raw(const std::string& id) const {
  const auto it = templates_.find(id);
  if (it == templates_.end()) throw Error(ErrorCode::MissingTemplate, "no template " + id);
  return it->second;
}

std::string TemplateSet::fill(const std::string& id,
                              const std::map<std::string, std::string>& values) const {
  const auto& text = raw(id);
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto open = text.find('{', i);
    if (open == std::string::npos) {
      out.append(text, i, std::string::npos);
      break;
    }
    const auto close = text.find('}', open);
    const auto name = close == std::string::npos ? "" : text.substr(open + 1, close - open - 1);
    // Only {identifier} is a placeholder; JSON braces in examples pass through.
    bool ident = !name.empty();
    for (char c : name) ident = ident && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    out.append(text, i, open - i);
    if (!ident) {
      out.push_back('{');
      i = open + 1;
      continue;
    }
    const auto it = values.find(name);
    if (it == values.end()) {
      throw Error(ErrorCode::InvalidArgument, "template " + id + " needs a value for {" + name + "}");
    }
    out += it->second;
    i = close + 1;
  }
  return out;
}

}  // namespace forge::script
