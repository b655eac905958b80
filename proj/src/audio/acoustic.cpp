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

#include "forge/audio/acoustic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "forge/audio/timeline.hpp"
#include "forge/common/error.hpp"

namespace forge::audio {
namespace {

// First and one-past-last active sample, or the whole clip when silent.
std::pair<std::size_t, std::size_t> active_bounds(const Waveform& clip) {
  const auto mask = active_mask(clip);
  const auto first = std::find(mask.begin(), mask.end(), true);
  if (first == mask.end()) return {0, clip.size()};
  const auto last = std::find(mask.rbegin(), mask.rend(), true);
  return {static_cast<std::size_t>(first - mask.begin()),
          static_cast<std::size_t>(mask.rend() - last)};
}

}  // namespace

CharLabels text_to_labels(std::string_view text) {
  CharLabels out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    int label = -1;
    if (std::isalpha(c)) label = 1 + (std::tolower(c) - 'a');
    else if (std::isdigit(c)) label = 27 + (c - '0');
    if (label < 0) continue;
    out.labels.push_back(label);
    out.char_pos.push_back(i);
  }
  return out;
}

CtcPosteriors UniformRateAcousticModel::posteriors(const Waveform& clip, const CharLabels& labels) {
  CtcPosteriors p;
  p.frame_seconds = frame_seconds_;
  p.columns = kCharColumns;
  p.blank = 0;
  const auto hop = std::max<std::int64_t>(1, to_samples(frame_seconds_, clip.rate));
  p.frames = std::max<std::size_t>(1, (clip.size() + static_cast<std::size_t>(hop) - 1) /
                                          static_cast<std::size_t>(hop));
  p.logp.assign(p.frames * p.columns, 0.0);

  const auto [a_s, b_s] = active_bounds(clip);
  const double a = static_cast<double>(a_s) / static_cast<double>(hop);
  const double b = static_cast<double>(b_s) / static_cast<double>(hop);
  const double L = static_cast<double>(std::max<std::size_t>(1, labels.labels.size()));
  const double pitch = (b - a) / L;
  const double sigma = std::max(0.5, 0.5 * pitch);

  std::vector<double> row(p.columns);
  for (std::size_t t = 0; t < p.frames; ++t) {
    std::fill(row.begin(), row.end(), 1e-6);
    row[0] += 0.3;
    const double ft = static_cast<double>(t) + 0.5;
    // Only nearby labels contribute.
    const auto center = static_cast<std::int64_t>((ft - a) / std::max(pitch, 1e-9));
    for (std::int64_t i = center - 6; i <= center + 6; ++i) {
      if (i < 0 || i >= static_cast<std::int64_t>(labels.labels.size())) continue;
      const double c = a + (static_cast<double>(i) + 0.5) * pitch;
      const double z = (ft - c) / sigma;
      row[static_cast<std::size_t>(labels.labels[static_cast<std::size_t>(i)])] += std::exp(-0.5 * z * z);
    }
    double sum = 0.0;
    for (double v : row) sum += v;
    for (std::size_t c = 0; c < p.columns; ++c) p.logp[t * p.columns + c] = std::log(row[c] / sum);
  }
  return p;
}

double char_onset_seconds(const Waveform& clip, std::string_view text, std::size_t char_pos,
                          AcousticModel& model) {
  const auto labels = text_to_labels(text);
  const auto it = std::lower_bound(labels.char_pos.begin(), labels.char_pos.end(), char_pos);
  if (it == labels.char_pos.end()) return clip.duration();
  const auto index = static_cast<std::size_t>(it - labels.char_pos.begin());
  try {
    const auto post = model.posteriors(clip, labels);
    const auto alignment = ctc_force_align(post, labels.labels);
    const double t = static_cast<double>(alignment.spans[index].first) * post.frame_seconds;
    return std::min(t, clip.duration());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Infeasible) throw;
  }
  const auto [a, b] = active_bounds(clip);
  const double frac = static_cast<double>(index) / static_cast<double>(labels.labels.size());
  return (static_cast<double>(a) + frac * static_cast<double>(b - a)) / clip.rate;
}

}  // namespace forge::audio
