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

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace forge::episode {

enum class InstructionType {
  Sentiment,
  Overlapping,
  NonVerbal,
  Identity,
  Dyadic,
  Triadic,
  DirectText,  // single-person text instruction kept for command following
};

inline constexpr std::array<InstructionType, 7> kAllInstructionTypes = {
    InstructionType::Sentiment, InstructionType::Overlapping, InstructionType::NonVerbal,
    InstructionType::Identity,  InstructionType::Dyadic,      InstructionType::Triadic,
    InstructionType::DirectText,
};

// Lowercase wire names: "sentiment", "overlapping", "nonverbal", "identity",
// "dyadic", "triadic", "direct_text".
std::string_view to_string(InstructionType t);
std::optional<InstructionType> parse_instruction_type(std::string_view s);

enum class AgeGroup { Child, Adult, Senior };
enum class Gender { Male, Female };

std::string_view to_string(AgeGroup a);
std::string_view to_string(Gender g);
std::optional<AgeGroup> parse_age_group(std::string_view s);
std::optional<Gender> parse_gender(std::string_view s);

struct SpeakerProfile {
  std::string id;
  AgeGroup age_group = AgeGroup::Adult;
  Gender gender = Gender::Female;
  std::string timbre_ref;  // reference clip used for voice cloning

  // 0..5, one per (age group, gender) pair.
  int demographic_category() const {
    return static_cast<int>(age_group) * 2 + static_cast<int>(gender);
  }

  bool operator==(const SpeakerProfile&) const = default;
};

}  // namespace forge::episode
