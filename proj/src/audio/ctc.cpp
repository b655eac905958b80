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

#include "forge/audio/ctc.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "forge/common/error.hpp"

namespace forge::audio {

void CtcPosteriors::check_normalized(double tol) const {
  for (std::size_t t = 0; t < frames; ++t) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < columns; ++c) m = std::max(m, at(t, c));
    double s = 0.0;
    for (std::size_t c = 0; c < columns; ++c) s += std::exp(at(t, c) - m);
    if (std::abs(m + std::log(s)) > tol) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(t) + " is not normalized",
                  static_cast<std::int64_t>(t));
    }
  }
}

std::size_t ctc_min_frames(std::span<const int> labels) {
  std::size_t n = labels.size();
  for (std::size_t i = 1; i < labels.size(); ++i) n += labels[i] == labels[i - 1] ? 1 : 0;
  return n;
}

Alignment ctc_force_align(const CtcPosteriors& post, std::span<const int> labels) {
  const std::size_t T = post.frames;
  if (T == 0 || post.logp.size() != T * post.columns) {
    throw Error(ErrorCode::DimensionMismatch, "posterior matrix shape is inconsistent");
  }
  if (post.blank < 0 || static_cast<std::size_t>(post.blank) >= post.columns) {
    throw Error(ErrorCode::DimensionMismatch, "blank column out of range");
  }
  for (int l : labels) {
    if (l < 0 || static_cast<std::size_t>(l) >= post.columns || l == post.blank) {
      throw Error(ErrorCode::DimensionMismatch, "label " + std::to_string(l) + " has no posterior column");
    }
  }
  if (T < ctc_min_frames(labels)) {
    throw Error(ErrorCode::Infeasible, std::to_string(T) + " frames cannot hold " +
                                           std::to_string(labels.size()) + " labels");
  }

  // Extended sequence: blank, l0, blank, l1, ..., blank.
  const std::size_t S = 2 * labels.size() + 1;
  auto sym = [&](std::size_t s) { return s % 2 == 0 ? post.blank : labels[s / 2]; };
  constexpr double kNeg = -std::numeric_limits<double>::infinity();
  std::vector<double> score(T * S, kNeg);
  std::vector<std::uint8_t> back(T * S, 0);  // how many states we stepped: 0, 1 or 2

  score[0] = post.at(0, static_cast<std::size_t>(post.blank));
  if (S > 1) score[1] = post.at(0, static_cast<std::size_t>(labels[0]));
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t s = 0; s < S; ++s) {
      double best = score[(t - 1) * S + s];
      std::uint8_t step = 0;
      if (s >= 1 && score[(t - 1) * S + s - 1] > best) {
        best = score[(t - 1) * S + s - 1];
        step = 1;
      }
      if (s >= 2 && s % 2 == 1 && sym(s) != sym(s - 2) && score[(t - 1) * S + s - 2] > best) {
        best = score[(t - 1) * S + s - 2];
        step = 2;
      }
      if (best == kNeg) continue;
      score[t * S + s] = best + post.at(t, static_cast<std::size_t>(sym(s)));
      back[t * S + s] = step;
    }
  }

  std::size_t s = S - 1;
  if (S > 1 && score[(T - 1) * S + S - 2] > score[(T - 1) * S + S - 1]) s = S - 2;
  Alignment out;
  out.score = score[(T - 1) * S + s];
  out.path.resize(T);
  out.spans.assign(labels.size(), {0, 0});
  std::vector<bool> seen(labels.size(), false);
  for (std::size_t t = T; t-- > 0;) {
    out.path[t] = sym(s);
    if (s % 2 == 1) {
      auto& span = out.spans[s / 2];
      if (!seen[s / 2]) {
        span.second = t;
        seen[s / 2] = true;
      }
      span.first = t;
    }
    if (t > 0) s -= back[t * S + s];
  }
  return out;
}

}  // namespace forge::audio
