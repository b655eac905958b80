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
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/common/disk_cache.hpp"
#include "forge/common/http.hpp"

namespace forge::script {

struct ChatMessage {
  std::string role;  // "system" | "user" | "assistant"
  std::string content;
};

struct ChatRequest {
  std::string template_id;
  std::vector<ChatMessage> messages;
  // The filled prompt text; equals the last user message.
  const std::string& prompt() const { return messages.back().content; }
};

struct ChatClientConfig {
  std::string endpoint;  // base URL; requests go to {endpoint}/chat/completions
  std::string model;
  double timeout_seconds = 60.0;
  int max_retries = 3;
  std::filesystem::path cache_dir;
  std::string api_key_env = "FORGE_API_KEY";

  // Throws InvalidArgument unless retries >= 0 and timeout > 0.
  void validate() const;
};

// Messages in, text out.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // Throws ServiceError.
  virtual std::string complete(const ChatRequest& request) = 0;
  virtual std::string model() const = 0;
};

// OpenAI-compatible chat-completions endpoint. The bearer credential is read
// from the environment variable named in the config, if set.
class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(ChatClientConfig config);
  std::string complete(const ChatRequest& request) override;
  std::string model() const override { return config_.model; }

 private:
  ChatClientConfig config_;
};

// Replays canned responses. Each rule is {"template": id, "contains": text or
// [texts], "response": text or JSON value}; the first rule whose template
// matches (or is "*") and whose every `contains` string occurs in the prompt
// wins. Non-string responses are serialized as JSON text.
class MockChatClient : public ChatClient {
 public:
  struct Rule {
    std::string template_id;
    std::vector<std::string> contains;
    std::string response;
  };

  explicit MockChatClient(std::vector<Rule> rules) : rules_(std::move(rules)) {}
  // JSONL file, or a single JSON array of rules. Throws SchemaError.
  static MockChatClient from_file(const std::filesystem::path& path);

  std::string complete(const ChatRequest& request) override;
  std::string model() const override { return "mock"; }
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

nlohmann::json to_json(const MockChatClient::Rule& rule);

// Disk cache in front of another client, keyed by SHA-256 of
// (template id, filled prompt, model).
class CachedChatClient : public ChatClient {
 public:
  CachedChatClient(std::shared_ptr<ChatClient> inner, std::shared_ptr<DiskCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}
  std::string complete(const ChatRequest& request) override;
  std::string model() const override { return inner_->model(); }

 private:
  std::shared_ptr<ChatClient> inner_;
  std::shared_ptr<DiskCache> cache_;
};

}  // namespace forge::script
