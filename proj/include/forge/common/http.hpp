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

#include <string>
#include <utility>
#include <vector>

namespace forge {

struct HttpTarget {
  std::string base;  // scheme://host[:port]
  std::string path;  // path prefix, no trailing slash
};

// Splits "http://host:8080/v1" into {"http://host:8080", "/v1"}. Throws
// InvalidArgument.
HttpTarget parse_http_url(const std::string& url);

struct RetryPolicy {
  double timeout_seconds = 60.0;
  int max_retries = 3;
  double backoff_seconds = 0.5;  // doubled after every failed attempt
};

// POSTs `body` and returns the response body of the first 2xx reply.
// Transport errors, 429 and 5xx are retried; other statuses fail at once.
// Throws ServiceError.
std::string http_post(const std::string& url, const std::string& body,
                      const std::string& content_type,
                      const std::vector<std::pair<std::string, std::string>>& headers,
                      const RetryPolicy& policy);

}  // namespace forge
