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

#include "forge/audio/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "forge/common/error.hpp"

namespace forge::audio {
namespace {

constexpr double kSilenceRms = 1e-4;

void check_rate(const Waveform& w, int rate) {
  if (w.rate != rate) {
    throw Error(ErrorCode::RateMismatch,
                "clip at " + std::to_string(w.rate) + " Hz, timeline at " + std::to_string(rate) + " Hz");
  }
}

}  // namespace

Waveform render(const Timeline& tl) {
  Waveform out;
  out.rate = tl.rate;
  out.samples.assign(static_cast<std::size_t>(tl.total_len), 0.0);
  for (const auto& p : tl.placements) {
    for (std::size_t i = 0; i < p.clip.size(); ++i) {
      const auto at = p.start + static_cast<std::int64_t>(i);
      if (at >= 0 && at < tl.total_len) out.samples[static_cast<std::size_t>(at)] += p.clip.samples[i];
    }
  }
  if (tl.hard_clip) {
    for (double& s : out.samples) s = std::clamp(s, -1.0, 1.0);
  }
  return out;
}

Timeline assemble_timeline(std::span<const Waveform> clips, std::span<const double> gaps,
                           std::span<const OverlapSpec> overlaps) {
  Timeline tl;
  if (clips.empty()) return tl;
  tl.rate = clips[0].rate;
  for (const auto& c : clips) check_rate(c, tl.rate);
  if (!gaps.empty() && gaps.size() + 1 != clips.size()) {
    throw Error(ErrorCode::InvalidArgument, "expected one gap per clip boundary");
  }
  for (double g : gaps) {
    if (!(g >= 0.0)) throw Error(ErrorCode::InvalidArgument, "gaps must be non-negative");
  }

  std::vector<const OverlapSpec*> by_interrupting(clips.size(), nullptr);
  for (const auto& o : overlaps) {
    if (o.interrupted >= clips.size() || o.interrupting >= clips.size() ||
        o.interrupting <= o.interrupted) {
      throw Error(ErrorCode::InvalidArgument, "overlap references invalid turn indices");
    }
    if (!(o.seconds > 0.0)) throw Error(ErrorCode::InvalidArgument, "overlap must be positive");
    const auto d = to_samples(o.seconds, tl.rate);
    if (d > static_cast<std::int64_t>(clips[o.interrupted].size()) ||
        d > static_cast<std::int64_t>(clips[o.interrupting].size())) {
      throw Error(ErrorCode::OverlapTooLong,
                  "overlap of " + std::to_string(o.seconds) + " s exceeds a clip duration");
    }
    if (by_interrupting[o.interrupting]) {
      throw Error(ErrorCode::InvalidArgument, "turn is interrupting twice");
    }
    by_interrupting[o.interrupting] = &o;
  }

  std::int64_t frontier = 0;
  for (std::size_t k = 0; k < clips.size(); ++k) {
    std::int64_t start;
    if (const auto* o = by_interrupting[k]) {
      start = tl.placements[o->interrupted].end() - to_samples(o->seconds, tl.rate);
    } else {
      start = k == 0 ? 0 : frontier + (gaps.empty() ? 0 : to_samples(gaps[k - 1], tl.rate));
    }
    tl.placements.push_back({clips[k], start, Channel::Speech});
    frontier = std::max(frontier, tl.placements.back().end());
  }
  tl.total_len = frontier;
  return tl;
}

std::int64_t overlap_samples(const Placement& a, const Placement& b) {
  return std::max<std::int64_t>(0, std::min(a.end(), b.end()) - std::max(a.start, b.start));
}

Timeline insert_event(const Timeline& tl, double anchor_seconds, const Waveform& clip,
                      InsertMode mode) {
  check_rate(clip, tl.rate);
  if (!(anchor_seconds >= 0.0) || to_samples(anchor_seconds, tl.rate) > tl.total_len) {
    throw Error(ErrorCode::AnchorOutOfRange,
                "anchor " + std::to_string(anchor_seconds) + " s outside [0, " +
                    std::to_string(tl.duration()) + "]");
  }
  const auto anchor = to_samples(anchor_seconds, tl.rate);
  const auto len = static_cast<std::int64_t>(clip.size());
  Timeline out = tl;
  if (mode == InsertMode::GapInsert) {
    for (auto& p : out.placements) {
      if (p.start >= anchor) p.start += len;
    }
    out.total_len += len;
    out.placements.push_back({clip, anchor, Channel::Event});
    return out;
  }
  out.placements.push_back({clip, anchor, Channel::Event});
  out.total_len = std::max(out.total_len, anchor + len);
  if (!out.hard_clip) {
    const auto mix = render(out);
    for (std::int64_t i = anchor; i < anchor + len; ++i) {
      if (std::abs(mix.samples[static_cast<std::size_t>(i)]) > 1.0) {
        throw Error(ErrorCode::PeakOverflow, "overlay exceeds full scale", i);
      }
    }
  }
  return out;
}

std::vector<bool> active_mask(const Waveform& w) {
  const std::size_t n = w.size();
  const auto win = static_cast<std::size_t>(std::max<std::int64_t>(1, to_samples(0.025, w.rate)));
  const auto hop = static_cast<std::size_t>(std::max<std::int64_t>(1, to_samples(0.010, w.rate)));
  std::vector<bool> mask(n, false);
  if (n == 0) return mask;
  // Prefix sums of squares give every frame energy in O(1).
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + w.samples[i] * w.samples[i];
  auto mark = [&](std::size_t a, std::size_t b) {
    const double r = std::sqrt((prefix[b] - prefix[a]) / static_cast<double>(b - a));
    if (r >= kSilenceRms) std::fill(mask.begin() + static_cast<std::ptrdiff_t>(a),
                                    mask.begin() + static_cast<std::ptrdiff_t>(b), true);
  };
  if (n <= win) {
    mark(0, n);
    return mask;
  }
  std::size_t a = 0;
  for (; a + win <= n; a += hop) mark(a, a + win);
  if (a - hop + win < n) mark(n - win, n);  // tail not covered by a full frame
  return mask;
}

double measure_snr(const Waveform& signal, const Waveform& noise) {
  if (signal.rate != noise.rate) throw Error(ErrorCode::RateMismatch, "signal and noise rates differ");
  if (signal.size() != noise.size()) {
    throw Error(ErrorCode::InvalidArgument, "signal and noise lengths differ");
  }
  const auto mask = active_mask(signal);
  double ps = 0.0, pn = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    if (!mask[i]) continue;
    ps += signal.samples[i] * signal.samples[i];
    pn += noise.samples[i] * noise.samples[i];
    ++count;
  }
  if (count == 0 || ps == 0.0) throw Error(ErrorCode::SilentInput, "signal has no active region");
  if (pn == 0.0) throw Error(ErrorCode::SilentInput, "noise is silent over the active region");
  return 10.0 * std::log10(ps / pn);
}

Waveform loop_to_length(const Waveform& noise, std::size_t length) {
  if (noise.empty() || peak(noise) == 0.0) throw Error(ErrorCode::SilentNoise, "noise is silent");
  Waveform out;
  out.rate = noise.rate;
  if (noise.size() >= length) {
    out.samples.assign(noise.samples.begin(), noise.samples.begin() + static_cast<std::ptrdiff_t>(length));
    return out;
  }
  const auto fade = std::min<std::size_t>(static_cast<std::size_t>(to_samples(0.010, noise.rate)),
                                          noise.size() / 2);
  out.samples = noise.samples;
  while (out.size() < length) {
    // Equal-power crossfade: cos/sin gains keep summed power constant for
    // uncorrelated material.
    const std::size_t seam = out.size() - fade;
    for (std::size_t i = 0; i < fade; ++i) {
      const double th = 0.5 * std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(fade);
      out.samples[seam + i] = out.samples[seam + i] * std::cos(th) + noise.samples[i] * std::sin(th);
    }
    out.samples.insert(out.samples.end(), noise.samples.begin() + static_cast<std::ptrdiff_t>(fade),
                       noise.samples.end());
  }
  out.samples.resize(length);
  return out;
}

double background_gain(const Waveform& signal, const Waveform& noise, double target_snr_db) {
  if (signal.size() != noise.size()) {
    throw Error(ErrorCode::InvalidArgument, "signal and noise lengths differ");
  }
  const auto mask = active_mask(signal);
  double ps = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    if (!mask[i]) continue;
    ps += signal.samples[i] * signal.samples[i];
    pn += noise.samples[i] * noise.samples[i];
  }
  if (ps == 0.0) throw Error(ErrorCode::SilentTimeline, "timeline renders silent");
  if (pn == 0.0) throw Error(ErrorCode::SilentNoise, "noise is silent over the speech region");
  // Equal sample counts, so the mean-square ratio is the sum ratio.
  return std::sqrt(ps / pn) / std::pow(10.0, target_snr_db / 20.0);
}

BackgroundMix mix_background_detailed(const Timeline& tl, const Waveform& noise,
                                      double target_snr_db) {
  if (noise.rate != tl.rate) throw Error(ErrorCode::RateMismatch, "noise rate differs from timeline");
  const Waveform signal = render(tl);
  if (signal.empty() || peak(signal) == 0.0) {
    throw Error(ErrorCode::SilentTimeline, "timeline renders silent");
  }
  BackgroundMix m;
  const Waveform looped = loop_to_length(noise, signal.size());
  m.gain = background_gain(signal, looped, target_snr_db);
  m.scaled_noise = looped;
  for (double& s : m.scaled_noise.samples) s *= m.gain;
  m.mix = signal;
  for (std::size_t i = 0; i < m.mix.size(); ++i) m.mix.samples[i] += m.scaled_noise.samples[i];
  return m;
}

Waveform mix_background(const Timeline& tl, const Waveform& noise, double target_snr_db) {
  return mix_background_detailed(tl, noise, target_snr_db).mix;
}

}  // namespace forge::audio
