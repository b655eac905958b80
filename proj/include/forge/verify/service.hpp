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

// Verdict store and review queue behind the human verification stage.
//
// Verdicts go to an append-only JSONL log; the in-memory index is rebuilt
// from it on start. A verdict is acknowledged only after its line has been
// written and synced, so a crash can lose at most an unacknowledged verdict.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/dataset/review.hpp"

namespace forge::verify {

struct Verdict {
  std::string episode_id;
  std::string annotator_id;
  bool intent_recoverable = false;
  bool phenomenon_fidelity = false;
  std::string notes;
  std::int64_t timestamp = 0;  // ms since epoch, assigned by the service

  bool operator==(const Verdict&) const = default;
};

nlohmann::json to_json(const Verdict& v);
// Throws SchemaError. `timestamp` is optional in the input.
Verdict verdict_from_json(const nlohmann::json& j);

struct RateBreakdown {
  std::size_t n = 0;
  std::size_t recoverable_yes = 0;
  std::size_t fidelity_yes = 0;
  double recoverable_rate = 0.0;  // percent, one decimal
  double fidelity_rate = 0.0;

  bool operator==(const RateBreakdown&) const = default;
};

struct AgreementReport {
  RateBreakdown overall;
  std::map<episode::InstructionType, RateBreakdown> per_type;  // types with verdicts only
  std::size_t calibration_excluded = 0;
  std::size_t annotators = 0;

  bool operator==(const AgreementReport&) const = default;
};

nlohmann::json to_json(const AgreementReport& r);

struct ReportFilter {
  std::optional<std::string> annotator_id;
  std::optional<episode::InstructionType> instruction_type;
};

// yes/total as a percentage rounded half-up to 0.1, in exact integer arithmetic.
double percent_1dp(std::size_t yes, std::size_t total);

// Pure report over a set of verdicts; calibration items never count.
// Throws NoVerdicts when nothing is left after filtering.
AgreementReport compute_report(const dataset::ReviewBatch& batch, const std::vector<Verdict>& verdicts,
                               const ReportFilter& filter = {});

// Test seam for durability checks. MidWrite leaves a torn, newline-less
// prefix of the record in the log; AfterAppend syncs the full record but
// fails before the acknowledgement. Either way SimulatedCrash is thrown and
// the service object must be discarded, as a crashed process would be.
enum class CrashPoint { None, MidWrite, AfterAppend };

struct SimulatedCrash : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class VerifyService {
 public:
  // Opens (or creates) the log. Nothing can be judged until a batch is loaded.
  explicit VerifyService(std::filesystem::path log_path);

  // Rebuilds the index from the log against `batch`. A torn final line is
  // cut off; other unreadable lines are CorruptLine, a log entry for an
  // episode outside the batch is UnknownEpisode, a repeated
  // (episode, annotator) pair is DuplicateVerdict (index = line number).
  void load_batch(dataset::ReviewBatch batch);
  bool has_batch() const;
  dataset::ReviewBatch batch() const;  // NoBatchLoaded

  // Lowest-index item this annotator has not judged; nullopt when done.
  std::optional<std::pair<std::size_t, dataset::ReviewItem>> next_item(const std::string& annotator_id) const;

  // Appends durably, then acknowledges by returning the stored verdict.
  // Throws UnknownEpisode, DuplicateVerdict, NoBatchLoaded, InvalidArgument
  // (empty annotator id).
  Verdict submit_verdict(Verdict v);

  AgreementReport agreement_report(const ReportFilter& filter = {}) const;
  std::vector<Verdict> verdicts() const;  // log order
  std::size_t remaining(const std::string& annotator_id) const;

  const std::filesystem::path& log_path() const { return log_path_; }

  // One-shot: the next submission crashes at `point`. `torn_fraction` is the
  // share of the record's bytes that reach the log on MidWrite.
  void set_crash_point(CrashPoint point, double torn_fraction = 0.5);

 private:
  std::int64_t next_timestamp_locked(const std::string& annotator_id);

  std::filesystem::path log_path_;
  mutable std::shared_mutex mu_;
  std::optional<dataset::ReviewBatch> batch_;
  std::map<std::string, std::size_t> item_index_;  // episode id -> batch position
  std::vector<Verdict> log_;
  std::set<std::pair<std::string, std::string>> judged_;  // (annotator, episode)
  std::map<std::string, std::int64_t> last_ts_;           // per annotator
  CrashPoint crash_ = CrashPoint::None;
  double torn_fraction_ = 0.5;
};

}  // namespace forge::verify
