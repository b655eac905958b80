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

#include "forge/common/error.hpp"

namespace forge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownTag: return "UnknownTag";
    case ErrorCode::DanglingOverlap: return "DanglingOverlap";
    case ErrorCode::MisplacedAct: return "MisplacedAct";
    case ErrorCode::MissingSpeaker: return "MissingSpeaker";
    case ErrorCode::InvalidDoc: return "InvalidDoc";
    case ErrorCode::ServiceError: return "ServiceError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::RuleViolation: return "RuleViolation";
    case ErrorCode::MissingActTag: return "MissingActTag";
    case ErrorCode::PlaceholderMissing: return "PlaceholderMissing";
    case ErrorCode::MissingTemplate: return "MissingTemplate";
    case ErrorCode::EmptyAudio: return "EmptyAudio";
    case ErrorCode::UnsupportedVoice: return "UnsupportedVoice";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OverlapTooLong: return "OverlapTooLong";
    case ErrorCode::RateMismatch: return "RateMismatch";
    case ErrorCode::AnchorOutOfRange: return "AnchorOutOfRange";
    case ErrorCode::PeakOverflow: return "PeakOverflow";
    case ErrorCode::SilentInput: return "SilentInput";
    case ErrorCode::SilentTimeline: return "SilentTimeline";
    case ErrorCode::SilentNoise: return "SilentNoise";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadAudioFile: return "BadAudioFile";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::MalformedSequence: return "MalformedSequence";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::BadModelFile: return "BadModelFile";
    case ErrorCode::IllegalId: return "IllegalId";
    case ErrorCode::StrayActionToken: return "StrayActionToken";
    case ErrorCode::UnterminatedAction: return "UnterminatedAction";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::CorruptLine: return "CorruptLine";
    case ErrorCode::SampleTooLarge: return "SampleTooLarge";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NoBatchLoaded: return "NoBatchLoaded";
    case ErrorCode::DuplicateVerdict: return "DuplicateVerdict";
    case ErrorCode::UnknownEpisode: return "UnknownEpisode";
    case ErrorCode::NoVerdicts: return "NoVerdicts";
  }
  return "Unknown";
}

}  // namespace forge
