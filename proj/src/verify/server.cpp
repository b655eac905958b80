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

#include "forge/verify/server.hpp"

#include <httplib.h>

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"

namespace forge::verify {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
  send_json(res, status, {{"error", code}, {"message", message}});
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoBatchLoaded: return 503;
    case ErrorCode::DuplicateVerdict: return 409;
    case ErrorCode::UnknownEpisode:
    case ErrorCode::NoVerdicts:
    case ErrorCode::NotFound: return 404;
    case ErrorCode::SchemaError:
    case ErrorCode::InvalidArgument: return 400;
    default: return 500;
  }
}

std::string annotator_of(const httplib::Request& req) {
  if (req.has_param("annotator")) return req.get_param_value("annotator");
  return req.get_header_value("X-Annotator-Id");
}

// Runs a handler, mapping service errors onto status codes.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, status_for(e.code()), to_string(e.code()), e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "SchemaError", e.what());
    }
  };
}

}  // namespace

json item_json(std::size_t index, const dataset::ReviewItem& item, std::size_t remaining) {
  return {{"index", index},
          {"episode_id", item.episode_id},
          {"instruction_type", episode::to_string(item.instruction_type)},
          {"original_instruction", item.original_instruction},
          {"transcript", item.conversation},
          {"audio_url", "/api/episodes/" + item.episode_id + "/audio"},
          {"calibration", item.calibration},
          {"remaining", remaining}};
}

VerifyServer::VerifyServer(VerifyService& service, std::filesystem::path static_dir)
    : service_(service), http_(std::make_unique<httplib::Server>()) {
  auto& svc = service_;

  http_->Get("/api/review/next", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const auto annotator = annotator_of(req);
    if (annotator.empty()) return send_error(res, 400, "InvalidArgument", "annotator id required");
    const auto next = svc.next_item(annotator);
    if (!next) {
      res.status = 204;
      return;
    }
    send_json(res, 200, item_json(next->first, next->second, svc.remaining(annotator)));
  }));

  http_->Post("/api/verdicts", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    auto body = json::parse(req.body, nullptr, false);
    if (body.is_discarded()) return send_error(res, 400, "SchemaError", "body is not JSON");
    if (body.is_object() && !body.contains("annotator_id")) {
      const auto header = req.get_header_value("X-Annotator-Id");
      if (!header.empty()) body["annotator_id"] = header;
    }
    auto v = verdict_from_json(body);
    send_json(res, 201, to_json(svc.submit_verdict(std::move(v))));
  }));

  http_->Get("/api/report", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    ReportFilter filter;
    if (req.has_param("annotator")) filter.annotator_id = req.get_param_value("annotator");
    if (req.has_param("type")) {
      filter.instruction_type = episode::parse_instruction_type(req.get_param_value("type"));
      if (!filter.instruction_type) {
        return send_error(res, 400, "InvalidArgument", "unknown instruction type");
      }
    }
    send_json(res, 200, to_json(svc.agreement_report(filter)));
  }));

  http_->Get("/api/batch", guarded([&svc](const httplib::Request&, httplib::Response& res) {
    const auto batch = svc.batch();
    json items = json::array();
    std::size_t calibration = 0;
    for (const auto& i : batch.items) {
      calibration += i.calibration ? 1 : 0;
      items.push_back({{"episode_id", i.episode_id},
                       {"instruction_type", episode::to_string(i.instruction_type)},
                       {"calibration", i.calibration}});
    }
    send_json(res, 200,
              {{"seed", batch.seed},
               {"stratified", batch.stratified},
               {"size", batch.items.size()},
               {"calibration_items", calibration},
               {"verdicts", svc.verdicts().size()},
               {"items", items}});
  }));

  http_->Get(R"(/api/episodes/([^/]+)/audio)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    for (const auto& i : svc.batch().items) {
      if (i.episode_id != id) continue;
      if (!std::filesystem::is_regular_file(i.audio_path)) {
        return send_error(res, 404, "NotFound", "audio for " + id + " is missing");
      }
      res.status = 200;
      res.set_content(read_file(i.audio_path), "audio/wav");
      return;
    }
    send_error(res, 404, "UnknownEpisode", id + " is not in the current batch");
  }));

  if (!static_dir.empty()) http_->set_mount_point("/", static_dir.string());
}

VerifyServer::~VerifyServer() = default;

int VerifyServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? http_->bind_to_any_port(host) : http_->bind_to_port(host, port) ? port : -1;
  if (bound < 0) throw Error(ErrorCode::IoError, "cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void VerifyServer::serve() { http_->listen_after_bind(); }

void VerifyServer::stop() { http_->stop(); }

void VerifyServer::wait_until_ready() const { http_->wait_until_ready(); }

}  // namespace forge::verify
