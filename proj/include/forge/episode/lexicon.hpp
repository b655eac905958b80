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
#include <string_view>
#include <vector>

namespace forge::episode {

// Rule-based skill/object extraction over a frozen lexicon: the skill is the
// first verb lemma (with its particle for phrasal verbs such as "pick up"),
// objects are the head nouns found in the noun lexicon, longest match first.
struct VerbNoun {
  std::string skill;                 // empty when no known verb occurs
  std::vector<std::string> objects;  // unique, in order of appearance
};

VerbNoun extract_verb_noun(std::string_view instruction);

// Lowercased alphanumeric/apostrophe tokens.
std::vector<std::string> tokenize_words(std::string_view text);

bool is_known_object(std::string_view noun);

}  // namespace forge::episode
