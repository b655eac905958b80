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

#include "forge/episode/types.hpp"

namespace forge::episode {

std::string_view to_string(InstructionType t) {
  switch (t) {
    case InstructionType::Sentiment: return "sentiment";
    case InstructionType::Overlapping: return "overlapping";
    case InstructionType::NonVerbal: return "nonverbal";
    case InstructionType::Identity: return "identity";
    case InstructionType::Dyadic: return "dyadic";
    case InstructionType::Triadic: return "triadic";
    case InstructionType::DirectText: return "direct_text";
  }
  return "unknown";
}

std::optional<InstructionType> parse_instruction_type(std::string_view s) {
  for (auto t : kAllInstructionTypes) {
    if (to_string(t) == s) return t;
  }
  if (s == "non_verbal" || s == "non-verbal") return InstructionType::NonVerbal;
  if (s == "directtext" || s == "direct") return InstructionType::DirectText;
  return std::nullopt;
}

std::string_view to_string(AgeGroup a) {
  switch (a) {
    case AgeGroup::Child: return "child";
    case AgeGroup::Adult: return "adult";
    case AgeGroup::Senior: return "senior";
  }
  return "adult";
}

std::string_view to_string(Gender g) { return g == Gender::Male ? "male" : "female"; }

std::optional<AgeGroup> parse_age_group(std::string_view s) {
  if (s == "child") return AgeGroup::Child;
  if (s == "adult") return AgeGroup::Adult;
  if (s == "senior" || s == "elderly") return AgeGroup::Senior;
  return std::nullopt;
}

std::optional<Gender> parse_gender(std::string_view s) {
  if (s == "male") return Gender::Male;
  if (s == "female") return Gender::Female;
  return std::nullopt;
}

}  // namespace forge::episode
