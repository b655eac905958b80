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

#include "forge/verify/service.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <mutex>

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"

namespace forge::verify {

using nlohmann::json;

json to_json(const Verdict& v) {
  return {{"episode_id", v.episode_id},
          {"annotator_id", v.annotator_id},
          {"intent_recoverable", v.intent_recoverable},
          {"phenomenon_fidelity", v.phenomenon_fidelity},
          {"notes", v.notes},
          {"timestamp", v.timestamp}};
}

Verdict verdict_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::SchemaError, "verdict must be an object");
  const auto need = [&](const char* key, bool (json::*is)() const noexcept) -> const json& {
    if (!j.contains(key) || !(j.at(key).*is)()) {
      throw Error(ErrorCode::SchemaError, std::string("verdict field '") + key + "' missing or mistyped");
    }
    return j.at(key);
  };
  Verdict v;
  v.episode_id = need("episode_id", &json::is_string).get<std::string>();
  v.annotator_id = need("annotator_id", &json::is_string).get<std::string>();
  v.intent_recoverable = need("intent_recoverable", &json::is_boolean).get<bool>();
  v.phenomenon_fidelity = need("phenomenon_fidelity", &json::is_boolean).get<bool>();
  if (j.contains("notes")) v.notes = need("notes", &json::is_string).get<std::string>();
  if (j.contains("timestamp")) v.timestamp = need("timestamp", &json::is_number_integer).get<std::int64_t>();
  return v;
}

double percent_1dp(std::size_t yes, std::size_t total) {
  if (total == 0) return 0.0;
  // round(yes * 1000 / total) half-up, kept in integers so 987/1000 is 98.7 exactly.
  const auto permille = (static_cast<std::uint64_t>(yes) * 2000 + total) / (2 * static_cast<std::uint64_t>(total));
  return static_cast<double>(permille) / 10.0;
}

namespace {

void add(RateBreakdown& b, const Verdict& v) {
  ++b.n;
  b.recoverable_yes += v.intent_recoverable ? 1 : 0;
  b.fidelity_yes += v.phenomenon_fidelity ? 1 : 0;
}

void finish(RateBreakdown& b) {
  b.recoverable_rate = percent_1dp(b.recoverable_yes, b.n);
  b.fidelity_rate = percent_1dp(b.fidelity_yes, b.n);
}

json to_json(const RateBreakdown& b) {
  return {{"n_verdicts", b.n},
          {"recoverable_yes", b.recoverable_yes},
          {"fidelity_yes", b.fidelity_yes},
          {"recoverable_rate", b.recoverable_rate},
          {"fidelity_rate", b.fidelity_rate}};
}

}  // namespace

json to_json(const AgreementReport& r) {
  json out = to_json(r.overall);
  json per_type = json::object();
  for (const auto& [t, b] : r.per_type) per_type[std::string(episode::to_string(t))] = to_json(b);
  out["per_type"] = per_type;
  out["calibration_excluded"] = r.calibration_excluded;
  out["annotators"] = r.annotators;
  return out;
}

AgreementReport compute_report(const dataset::ReviewBatch& batch, const std::vector<Verdict>& verdicts,
                               const ReportFilter& filter) {
  std::map<std::string, const dataset::ReviewItem*> items;
  for (const auto& i : batch.items) items[i.episode_id] = &i;
  AgreementReport r;
  std::set<std::string> annotators;
  for (const auto& v : verdicts) {
    if (filter.annotator_id && v.annotator_id != *filter.annotator_id) continue;
    const auto it = items.find(v.episode_id);
    if (it == items.end()) continue;
    const auto type = it->second->instruction_type;
    if (filter.instruction_type && type != *filter.instruction_type) continue;
    if (it->second->calibration) {
      ++r.calibration_excluded;
      continue;
    }
    add(r.overall, v);
    add(r.per_type[type], v);
    annotators.insert(v.annotator_id);
  }
  if (r.overall.n == 0) throw Error(ErrorCode::NoVerdicts, "no verdicts match the report filter");
  finish(r.overall);
  for (auto& [t, b] : r.per_type) finish(b);
  r.annotators = annotators.size();
  return r;
}

VerifyService::VerifyService(std::filesystem::path log_path) : log_path_(std::move(log_path)) {
  if (log_path_.has_parent_path()) std::filesystem::create_directories(log_path_.parent_path());
  if (!std::filesystem::exists(log_path_)) write_file_atomic(log_path_, "");
}

void VerifyService::load_batch(dataset::ReviewBatch batch) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < batch.items.size(); ++i) {
    if (!index.emplace(batch.items[i].episode_id, i).second) {
      throw Error(ErrorCode::DuplicateId, "batch lists " + batch.items[i].episode_id + " twice",
                  static_cast<std::int64_t>(i));
    }
  }

  const auto text = read_file(log_path_);
  // Records are written together with their newline; anything after the
  // last newline never reached an acknowledgement and is cut off.
  const auto end = text.rfind('\n');
  const std::size_t kept = end == std::string::npos ? 0 : end + 1;
  std::vector<Verdict> log;
  std::set<std::pair<std::string, std::string>> judged;
  std::map<std::string, std::int64_t> last_ts;
  std::size_t line_no = 0;
  for (std::size_t pos = 0; pos < kept;) {
    const auto nl = text.find('\n', pos);
    const std::string_view line(text.data() + pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    const auto j = json::parse(line, nullptr, false);
    Verdict v;
    try {
      if (j.is_discarded()) throw Error(ErrorCode::SchemaError, "not JSON");
      v = verdict_from_json(j);
    } catch (const Error& e) {
      throw Error(ErrorCode::CorruptLine, log_path_.string() + ":" + std::to_string(line_no) + ": " + e.what(),
                  static_cast<std::int64_t>(line_no));
    }
    if (!index.count(v.episode_id)) {
      throw Error(ErrorCode::UnknownEpisode, "log line " + std::to_string(line_no) + " judges " + v.episode_id +
                                                 ", which is not in the batch",
                  static_cast<std::int64_t>(line_no));
    }
    if (!judged.emplace(v.annotator_id, v.episode_id).second) {
      throw Error(ErrorCode::DuplicateVerdict,
                  "log line " + std::to_string(line_no) + " repeats " + v.annotator_id + "/" + v.episode_id,
                  static_cast<std::int64_t>(line_no));
    }
    auto& ts = last_ts[v.annotator_id];
    ts = std::max(ts, v.timestamp);
    log.push_back(std::move(v));
  }

  std::unique_lock lock(mu_);
  if (kept < text.size()) std::filesystem::resize_file(log_path_, kept);
  batch_ = std::move(batch);
  item_index_ = std::move(index);
  log_ = std::move(log);
  judged_ = std::move(judged);
  last_ts_ = std::move(last_ts);
}

bool VerifyService::has_batch() const {
  std::shared_lock lock(mu_);
  return batch_.has_value();
}

dataset::ReviewBatch VerifyService::batch() const {
  std::shared_lock lock(mu_);
  if (!batch_) throw Error(ErrorCode::NoBatchLoaded, "no review batch loaded");
  return *batch_;
}

std::optional<std::pair<std::size_t, dataset::ReviewItem>> VerifyService::next_item(
    const std::string& annotator_id) const {
  std::shared_lock lock(mu_);
  if (!batch_) throw Error(ErrorCode::NoBatchLoaded, "no review batch loaded");
  for (std::size_t i = 0; i < batch_->items.size(); ++i) {
    if (!judged_.count({annotator_id, batch_->items[i].episode_id})) {
      return std::make_pair(i, batch_->items[i]);
    }
  }
  return std::nullopt;
}

std::size_t VerifyService::remaining(const std::string& annotator_id) const {
  std::shared_lock lock(mu_);
  if (!batch_) throw Error(ErrorCode::NoBatchLoaded, "no review batch loaded");
  std::size_t n = 0;
  for (const auto& i : batch_->items) n += judged_.count({annotator_id, i.episode_id}) ? 0 : 1;
  return n;
}

std::int64_t VerifyService::next_timestamp_locked(const std::string& annotator_id) {
  const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  const auto it = last_ts_.find(annotator_id);
  return it == last_ts_.end() ? now : std::max<std::int64_t>(now, it->second + 1);
}

Verdict VerifyService::submit_verdict(Verdict v) {
  std::unique_lock lock(mu_);
  if (!batch_) throw Error(ErrorCode::NoBatchLoaded, "no review batch loaded");
  if (v.annotator_id.empty()) throw Error(ErrorCode::InvalidArgument, "annotator id is empty");
  if (!item_index_.count(v.episode_id)) {
    throw Error(ErrorCode::UnknownEpisode, v.episode_id + " is not in the current batch");
  }
  if (judged_.count({v.annotator_id, v.episode_id})) {
    throw Error(ErrorCode::DuplicateVerdict, v.annotator_id + " already judged " + v.episode_id);
  }
  v.timestamp = next_timestamp_locked(v.annotator_id);
  const auto line = to_json(v).dump();

  const auto crash = std::exchange(crash_, CrashPoint::None);
  if (crash == CrashPoint::MidWrite) {
    const auto n = static_cast<std::size_t>(torn_fraction_ * static_cast<double>(line.size()));
    std::ofstream out(log_path_, std::ios::binary | std::ios::app);
    out.write(line.data(), static_cast<std::streamsize>(std::min(n, line.size() - 1)));
    out.flush();
    throw SimulatedCrash("crash while writing the verdict record");
  }

  const auto size_before = std::filesystem::file_size(log_path_);
  try {
    append_line_durable(log_path_, line);
  } catch (const Error&) {
    // Drop a partial record so later appends start on a clean line.
    std::error_code ec;
    std::filesystem::resize_file(log_path_, size_before, ec);
    throw;
  }
  if (crash == CrashPoint::AfterAppend) throw SimulatedCrash("crash after the append, before the ack");

  judged_.emplace(v.annotator_id, v.episode_id);
  last_ts_[v.annotator_id] = v.timestamp;
  log_.push_back(v);
  return v;
}

AgreementReport VerifyService::agreement_report(const ReportFilter& filter) const {
  std::shared_lock lock(mu_);
  if (!batch_) throw Error(ErrorCode::NoBatchLoaded, "no review batch loaded");
  return compute_report(*batch_, log_, filter);
}

std::vector<Verdict> VerifyService::verdicts() const {
  std::shared_lock lock(mu_);
  return log_;
}

void VerifyService::set_crash_point(CrashPoint point, double torn_fraction) {
  std::unique_lock lock(mu_);
  crash_ = point;
  torn_fraction_ = std::clamp(torn_fraction, 0.0, 1.0);
}

}  // namespace forge::verify
