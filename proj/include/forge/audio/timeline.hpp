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
#include <optional>
#include <span>
#include <vector>

#include "forge/audio/waveform.hpp"
#include "forge/episode/episode.hpp"

namespace forge::audio {

enum class Channel { Speech, Event, Background };

struct Placement {
  Waveform clip;
  std::int64_t start = 0;
  Channel channel = Channel::Speech;

  std::int64_t end() const { return start + static_cast<std::int64_t>(clip.size()); }
};

struct Timeline {
  int rate = kCanonicalRate;
  std::vector<Placement> placements;
  std::int64_t total_len = 0;
  bool hard_clip = false;  // clip the render to [-1, 1] instead of failing

  double duration() const { return static_cast<double>(total_len) / rate; }
};

// Interrupting turn starts `seconds` before the interrupted turn ends.
struct OverlapSpec {
  std::size_t interrupted = 0;
  std::size_t interrupting = 0;
  double seconds = 0.0;
};

// Sum of all placements over [0, total_len). Clipped when tl.hard_clip.
Waveform render(const Timeline& tl);

// Each clip starts `gaps[k-1]` after the latest end among earlier clips,
// unless an overlap pulls it back. `gaps` may be empty (all zero) or hold
// one entry per boundary. Throws RateMismatch, OverlapTooLong,
// InvalidArgument.
Timeline assemble_timeline(std::span<const Waveform> clips, std::span<const double> gaps,
                           std::span<const OverlapSpec> overlaps);

// Samples shared by two placements.
std::int64_t overlap_samples(const Placement& a, const Placement& b);

using InsertMode = episode::EventMode;

// gap_insert: placements starting at or after the anchor move right by the
// clip length. overlay: the clip is added on top, nothing moves.
// Throws AnchorOutOfRange, RateMismatch, PeakOverflow.
Timeline insert_event(const Timeline& tl, double anchor_seconds, const Waveform& clip,
                      InsertMode mode);

// Samples belonging to 25 ms frames (10 ms hop) whose RMS reaches 1e-4.
std::vector<bool> active_mask(const Waveform& w);

// 10 log10(P_signal / P_noise) over the signal's active region.
// Throws SilentInput, RateMismatch, InvalidArgument (length mismatch).
double measure_snr(const Waveform& signal, const Waveform& noise);

// Noise repeated (10 ms equal-power crossfade at each seam) or truncated to
// `length` samples. Throws SilentNoise.
Waveform loop_to_length(const Waveform& noise, std::size_t length);

// g such that signal + g * noise has the target SNR on the signal's active
// region. Throws SilentTimeline, SilentNoise.
double background_gain(const Waveform& signal, const Waveform& noise, double target_snr_db);

struct BackgroundMix {
  Waveform mix;
  Waveform scaled_noise;
  double gain = 0.0;
};

BackgroundMix mix_background_detailed(const Timeline& tl, const Waveform& noise,
                                      double target_snr_db);
Waveform mix_background(const Timeline& tl, const Waveform& noise, double target_snr_db);

}  // namespace forge::audio
