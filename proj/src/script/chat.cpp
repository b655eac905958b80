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

#include "forge/script/chat.hpp"

#include <cstdlib>

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"

namespace forge::script {

using nlohmann::json;

void ChatClientConfig::validate() const {
  if (max_retries < 0) throw Error(ErrorCode::InvalidArgument, "max_retries must be >= 0");
  if (!(timeout_seconds > 0.0)) throw Error(ErrorCode::InvalidArgument, "timeout must be > 0");
}

HttpChatClient::HttpChatClient(ChatClientConfig config) : config_(std::move(config)) {
  config_.validate();
  if (config_.endpoint.empty()) throw Error(ErrorCode::InvalidArgument, "chat endpoint is empty");
}

std::string HttpChatClient::complete(const ChatRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  const json body{{"model", config_.model}, {"messages", messages}, {"temperature", 0}};

  std::vector<std::pair<std::string, std::string>> headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
    headers.emplace_back("Authorization", std::string("Bearer ") + key);
  }
  RetryPolicy policy;
  policy.timeout_seconds = config_.timeout_seconds;
  policy.max_retries = config_.max_retries;
  const auto reply = http_post(config_.endpoint + "/chat/completions", body.dump(),
                               "application/json", headers, policy);
  try {
    const auto j = json::parse(reply);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ServiceError, std::string("unexpected chat reply: ") + e.what());
  }
}

namespace {

MockChatClient::Rule rule_from_json(const json& j) {
  MockChatClient::Rule r;
  r.template_id = j.value("template", "*");
  if (j.contains("contains")) {
    if (j["contains"].is_string()) {
      r.contains.push_back(j["contains"].get<std::string>());
    } else {
      r.contains = j["contains"].get<std::vector<std::string>>();
    }
  }
  const auto& resp = j.at("response");
  r.response = resp.is_string() ? resp.get<std::string>() : resp.dump();
  return r;
}

}  // namespace

MockChatClient MockChatClient::from_file(const std::filesystem::path& path) {
  std::vector<Rule> rules;
  const auto text = read_file(path);
  try {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
      for (const auto& j : json::parse(text)) rules.push_back(rule_from_json(j));
    } else {
      std::size_t no = 0;
      for (const auto& line : split(text, '\n')) {
        ++no;
        if (trim(line).empty()) continue;
        rules.push_back(rule_from_json(json::parse(line)));
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, path.string() + ": " + e.what());
  }
  return MockChatClient(std::move(rules));
}

std::string MockChatClient::complete(const ChatRequest& request) {
  const auto& prompt = request.prompt();
  for (const auto& r : rules_) {
    if (r.template_id != "*" && r.template_id != request.template_id) continue;
    bool ok = true;
    for (const auto& c : r.contains) ok = ok && prompt.find(c) != std::string::npos;
    if (ok) return r.response;
  }
  throw Error(ErrorCode::ServiceError, "no mock response for template " + request.template_id);
}

json to_json(const MockChatClient::Rule& rule) {
  return {{"template", rule.template_id}, {"contains", rule.contains}, {"response", rule.response}};
}

std::string CachedChatClient::complete(const ChatRequest& request) {
  const auto key = cache_key({"chat", request.template_id, request.prompt(), inner_->model()});
  return cache_->get_or_compute(key, [&] { return inner_->complete(request); });
}

}  // namespace forge::script
