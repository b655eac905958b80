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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace forge {

// Machine-readable failure kinds shared by every module. The string form
// (see to_string) is what CLIs print and what the HTTP API returns.
enum class ErrorCode {
  // markup grammar
  UnknownTag,
  DanglingOverlap,
  MisplacedAct,
  MissingSpeaker,
  InvalidDoc,
  // scripting
  ServiceError,
  SchemaError,
  RuleViolation,
  MissingActTag,
  PlaceholderMissing,
  MissingTemplate,
  // audio
  EmptyAudio,
  UnsupportedVoice,
  Infeasible,
  DimensionMismatch,
  OverlapTooLong,
  RateMismatch,
  AnchorOutOfRange,
  PeakOverflow,
  SilentInput,
  SilentTimeline,
  SilentNoise,
  InvalidArgument,
  BadAudioFile,
  // codec
  EmptyCorpus,
  ShapeMismatch,
  NonFinite,
  MalformedSequence,
  TruncatedPayload,
  BadModelFile,
  // stream demux
  IllegalId,
  StrayActionToken,
  UnterminatedAction,
  // dataset
  DuplicateId,
  NotFound,
  CorruptLine,
  SampleTooLarge,
  IoError,
  // verification
  NoBatchLoaded,
  DuplicateVerdict,
  UnknownEpisode,
  NoVerdicts,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  // `index` carries a location: a manifest line number, a segment index...
  Error(ErrorCode code, const std::string& message, std::int64_t index)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::int64_t index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::int64_t index_ = -1;
};

}  // namespace forge
