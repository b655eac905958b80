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

#include <filesystem>
#include <map>
#include <string>

namespace forge::script {

// Versioned prompt templates: one `<id>.txt` file per template, with
// `{name}` placeholders.
class TemplateSet {
 public:
  TemplateSet() = default;
  // Throws NotFound when the directory does not exist.
  static TemplateSet load(const std::filesystem::path& dir);

  bool has(const std::string& id) const { return templates_.count(id) != 0; }
  const std::string& raw(const std::string& id) const;
  void add(const std::string& id, std::string text) { templates_[id] = std::move(text); }

  // Substitutes every placeholder. Throws MissingTemplate, or InvalidArgument
  // naming a placeholder without a value.
  std::string fill(const std::string& id, const std::map<std::string, std::string>& values) const;

  std::string version() const { return version_; }

 private:
  std::map<std::string, std::string> templates_;
  std::string version_;
};

}  // namespace forge::script
