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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace forge::audio {

// T x (K + 1) frame log-probabilities; column `blank` is the CTC blank.
struct CtcPosteriors {
  std::size_t frames = 0;
  std::size_t columns = 0;
  std::vector<double> logp;  // row-major
  double frame_seconds = 0.02;
  int blank = 0;

  double at(std::size_t t, std::size_t c) const { return logp[t * columns + c]; }
  // Throws DimensionMismatch when a row does not normalize within `tol`.
  void check_normalized(double tol = 1e-6) const;
};

struct Alignment {
  // Inclusive [start_frame, end_frame] for each label, in label order.
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  // Column emitted at every frame (blank or a label symbol).
  std::vector<int> path;
  double score = 0.0;
};

// Minimum frame count for `labels`: one per label plus a blank between
// every pair of adjacent repeats.
std::size_t ctc_min_frames(std::span<const int> labels);

// Best-scoring path under the CTC topology (optional blanks, mandatory blank
// between repeated labels). Throws Infeasible, DimensionMismatch.
Alignment ctc_force_align(const CtcPosteriors& post, std::span<const int> labels);

}  // namespace forge::audio
