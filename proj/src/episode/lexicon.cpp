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

#include "forge/episode/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace forge::episode {
namespace {

// inflected form -> lemma
const std::unordered_map<std::string_view, std::string_view>& verb_forms() {
  static const std::unordered_map<std::string_view, std::string_view> forms = [] {
    std::unordered_map<std::string_view, std::string_view> m;
    static constexpr std::string_view kVerbs[][5] = {
        {"pick", "picks", "picked", "picking", ""},
        {"place", "places", "placed", "placing", ""},
        {"put", "puts", "putting", "", ""},
        {"move", "moves", "moved", "moving", ""},
        {"open", "opens", "opened", "opening", ""},
        {"close", "closes", "closed", "closing", ""},
        {"push", "pushes", "pushed", "pushing", ""},
        {"pull", "pulls", "pulled", "pulling", ""},
        {"turn", "turns", "turned", "turning", ""},
        {"take", "takes", "took", "taking", "taken"},
        {"grab", "grabs", "grabbed", "grabbing", ""},
        {"lift", "lifts", "lifted", "lifting", ""},
        {"stack", "stacks", "stacked", "stacking", ""},
        {"unstack", "unstacks", "unstacked", "unstacking", ""},
        {"knock", "knocks", "knocked", "knocking", ""},
        {"flip", "flips", "flipped", "flipping", ""},
        {"wipe", "wipes", "wiped", "wiping", ""},
        {"fold", "folds", "folded", "folding", ""},
        {"unfold", "unfolds", "unfolded", "unfolding", ""},
        {"pour", "pours", "poured", "pouring", ""},
        {"press", "presses", "pressed", "pressing", ""},
        {"slide", "slides", "slid", "sliding", ""},
        {"rotate", "rotates", "rotated", "rotating", ""},
        {"insert", "inserts", "inserted", "inserting", ""},
        {"remove", "removes", "removed", "removing", ""},
        {"drop", "drops", "dropped", "dropping", ""},
        {"sweep", "sweeps", "swept", "sweeping", ""},
        {"hang", "hangs", "hung", "hanging", ""},
        {"cover", "covers", "covered", "covering", ""},
        {"uncover", "uncovers", "uncovered", "uncovering", ""},
        {"set", "sets", "setting", "", ""},
        {"bring", "brings", "brought", "bringing", ""},
        {"lay", "lays", "laid", "laying", ""},
        {"upright", "uprights", "uprighted", "", ""},
        {"twist", "twists", "twisted", "twisting", ""},
        {"stir", "stirs", "stirred", "stirring", ""},
        {"clean", "cleans", "cleaned", "cleaning", ""},
        {"arrange", "arranges", "arranged", "arranging", ""},
        {"hand", "hands", "handed", "handing", ""},
        {"fetch", "fetches", "fetched", "fetching", ""},
        {"get", "gets", "got", "getting", ""},
        {"separate", "separates", "separated", "separating", ""},
        {"pack", "packs", "packed", "packing", ""},
        {"unpack", "unpacks", "unpacked", "unpacking", ""},
        {"shut", "shuts", "shutting", "", ""},
    };
    for (const auto& row : kVerbs) {
      for (auto form : row) {
        if (!form.empty()) m.emplace(form, row[0]);
      }
    }
    return m;
  }();
  return forms;
}

const std::unordered_set<std::string_view>& particles() {
  static const std::unordered_set<std::string_view> p = {"up", "down", "on", "off", "out",
                                                         "over", "away", "in"};
  return p;
}

// Phrasal verbs recognized as one skill.
const std::unordered_set<std::string_view>& phrasal() {
  static const std::unordered_set<std::string_view> p = {
      "pick up", "put down", "turn on", "turn off", "take out", "knock over", "put away",
      "pick out", "set down", "lay down", "take off", "turn over", "pull out",
  };
  return p;
}

const std::unordered_set<std::string_view>& nouns() {
  static const std::unordered_set<std::string_view> n = {
      // kitchenware
      "pot", "pan", "frying pan", "lid", "bowl", "black bowl", "plate", "cup", "mug", "glass",
      "spoon", "fork", "knife", "spatula", "ladle", "kettle", "moka pot", "ramekin", "tray",
      "cutting board", "colander", "jar", "bottle", "water bottle", "can", "tin", "dish",
      "saucepan", "wok", "teapot", "whisk", "grater", "strainer", "tupperware", "container",
      // appliances and furniture
      "drawer", "top drawer", "middle drawer", "bottom drawer", "cabinet", "cupboard", "oven",
      "oven door", "microwave", "microwave door", "fridge", "refrigerator", "stove", "burner",
      "sink", "faucet", "tap", "counter", "countertop", "table", "shelf", "rack", "door",
      "basket", "box", "cardboard box", "bin", "trash can", "toaster", "blender", "dishwasher",
      // cloth and cleaning
      "towel", "cloth", "orange cloth", "napkin", "yellow napkin", "sponge", "rag", "brush",
      "dishcloth", "tissue", "paper towel",
      // food
      "banana", "apple", "orange", "lemon", "lime", "pear", "peach", "grape", "grapes",
      "strawberry", "carrot", "potato", "tomato", "onion", "garlic", "pepper", "corn",
      "eggplant", "cucumber", "broccoli", "lettuce", "mushroom", "egg", "bread", "cheese",
      "cream cheese", "cream cheese box", "butter", "milk", "juice", "ketchup", "mustard",
      "sauce", "tomato sauce", "alphabet soup", "soup", "chocolate", "rxbar", "chip bag",
      "chips", "cookie", "cereal", "steak", "steak meat", "meat", "fish", "sausage", "dumpling",
      "salad dressing", "dressing", "bbq sauce", "pudding", "coke", "soda", "red bull", "can of soda",
      "coffee", "tea", "sugar", "salt", "rice", "pasta", "noodles",
      // toys and misc
      "ball", "red ball", "block", "cube", "toy", "doll", "stuffed animal", "marker", "pen",
      "pencil", "book", "remote", "phone", "keys", "key", "wallet", "bag", "shoe", "hat",
      "cup holder", "coaster", "candle", "vase", "flower", "plant", "lamp", "switch",
      "laptop", "mouse", "keyboard", "scissors", "tape", "stapler", "clip", "cable",
  };
  return n;
}

std::string singular(std::string_view w) {
  if (w.size() > 3 && w.ends_with("ies")) return std::string(w.substr(0, w.size() - 3)) + "y";
  if (w.size() > 3 && w.ends_with("es")) {
    std::string s(w.substr(0, w.size() - 2));
    if (nouns().contains(s)) return s;
  }
  if (w.size() > 2 && w.ends_with('s') && !w.ends_with("ss")) return std::string(w.substr(0, w.size() - 1));
  return std::string(w);
}

}  // namespace

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '\'') {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool is_known_object(std::string_view noun) { return nouns().contains(noun); }

VerbNoun extract_verb_noun(std::string_view instruction) {
  VerbNoun out;
  const auto words = tokenize_words(instruction);

  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto it = verb_forms().find(words[i]);
    if (it == verb_forms().end()) continue;
    out.skill = std::string(it->second);
    if (i + 1 < words.size() && particles().contains(words[i + 1])) {
      const std::string candidate = out.skill + " " + words[i + 1];
      if (phrasal().contains(candidate)) out.skill = candidate;
    }
    break;
  }

  // Greedy longest match, up to three words; plural heads are singularized.
  for (std::size_t i = 0; i < words.size();) {
    std::size_t matched = 0;
    std::string best;
    for (std::size_t len = std::min<std::size_t>(3, words.size() - i); len >= 1; --len) {
      std::string phrase;
      for (std::size_t k = 0; k < len; ++k) {
        if (k) phrase.push_back(' ');
        phrase += (k + 1 == len) ? singular(words[i + k]) : words[i + k];
      }
      std::string exact;
      for (std::size_t k = 0; k < len; ++k) {
        if (k) exact.push_back(' ');
        exact += words[i + k];
      }
      if (nouns().contains(exact)) {
        best = exact;
      } else if (nouns().contains(phrase)) {
        best = phrase;
      }
      if (!best.empty()) {
        matched = len;
        break;
      }
    }
    if (matched == 0) {
      ++i;
      continue;
    }
    if (std::find(out.objects.begin(), out.objects.end(), best) == out.objects.end()) {
      out.objects.push_back(best);
    }
    i += matched;
  }
  return out;
}

}  // namespace forge::episode
