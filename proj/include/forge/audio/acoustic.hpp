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

#include <string_view>
#include <vector>

#include "forge/audio/ctc.hpp"
#include "forge/audio/waveform.hpp"

namespace forge::audio {

// Character inventory used for alignment: column 0 is the blank, letters
// a-z are 1..26, digits 27..36. Other characters are not aligned.
inline constexpr int kCharColumns = 37;

struct CharLabels {
  std::vector<int> labels;
  std::vector<std::size_t> char_pos;  // byte offset of each label in the text
};

CharLabels text_to_labels(std::string_view text);

// Source of frame posteriors for a clip and its transcript, e.g. an exported
// CTC acoustic model.
class AcousticModel {
 public:
  virtual ~AcousticModel() = default;
  virtual CtcPosteriors posteriors(const Waveform& clip, const CharLabels& labels) = 0;
};

// Assumes a constant speaking rate: characters are spread evenly across the
// clip's active region, with a soft bump of probability around each
// character's expected frame. Useful offline and as a fallback.
class UniformRateAcousticModel : public AcousticModel {
 public:
  explicit UniformRateAcousticModel(double frame_seconds = 0.01) : frame_seconds_(frame_seconds) {}
  CtcPosteriors posteriors(const Waveform& clip, const CharLabels& labels) override;

 private:
  double frame_seconds_;
};

// Time (seconds from clip start) at which the character at byte offset
// `char_pos` of `text` begins, located by forced alignment. Offsets at or past
// the last aligned character map to the clip end. When the clip is too short
// to align, falls back to the proportional position within the active region.
double char_onset_seconds(const Waveform& clip, std::string_view text, std::size_t char_pos,
                          AcousticModel& model);

}  // namespace forge::audio
