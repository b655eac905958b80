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

// HTTP/JSON front of the verify service.
//
//   GET  /api/review/next?annotator=ID   200 item | 204 batch done
//   POST /api/verdicts                    201 | 400 | 404 unknown | 409 duplicate
//   GET  /api/report[?annotator=&type=]   200 | 404 no verdicts
//   GET  /api/batch                       batch metadata
//   GET  /api/episodes/{id}/audio         audio/wav
//
// The annotator may also be given in the X-Annotator-Id header. Errors are
// {"error": <code>, "message": ...}; 503 means no batch is loaded.

#include <filesystem>
#include <memory>
#include <string>

#include "forge/verify/service.hpp"

namespace httplib {
class Server;
}

namespace forge::verify {

class VerifyServer {
 public:
  // `static_dir`, when non-empty, is mounted at / for the review console.
  VerifyServer(VerifyService& service, std::filesystem::path static_dir = {});
  ~VerifyServer();

  // Returns the bound port (an ephemeral one when `port` is 0).
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void serve();
  void stop();
  void wait_until_ready() const;

 private:
  VerifyService& service_;
  std::unique_ptr<httplib::Server> http_;
};

// JSON shown to annotators for one batch item.
nlohmann::json item_json(std::size_t index, const dataset::ReviewItem& item, std::size_t remaining);

}  // namespace forge::verify
