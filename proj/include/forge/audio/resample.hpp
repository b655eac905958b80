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

#include "forge/audio/waveform.hpp"

namespace forge::audio {

struct ResamplerConfig {
  int taps = 64;              // filter length measured at the lower of the two rates
  double kaiser_beta = 8.0;
  double cutoff = 0.96;       // fraction of the lower Nyquist frequency
};

// Windowed-sinc polyphase resampler. Output length is
// round(len * target_rate / rate); a matching rate returns the input as is.
// Samples outside the input are treated as zero.
Waveform resample(const Waveform& w, int target_rate, const ResamplerConfig& config = {});

}  // namespace forge::audio
