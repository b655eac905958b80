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
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace forge::audio {

inline constexpr int kCanonicalRate = 16000;

struct Waveform {
  std::vector<double> samples;
  int rate = kCanonicalRate;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration() const { return static_cast<double>(samples.size()) / rate; }

  bool operator==(const Waveform&) const = default;
};

double peak(const Waveform& w);
double rms(const Waveform& w);
// Number of whole samples closest to `seconds` at `rate`.
std::int64_t to_samples(double seconds, int rate);

enum class SampleFormat { Pcm16, Float32 };

// RIFF/WAVE mono. Pcm16 output is dithered with seeded triangular (TPDF)
// noise of +-1 LSB, so identical (waveform, seed) pairs give identical bytes.
std::string encode_wav(const Waveform& w, SampleFormat format = SampleFormat::Pcm16,
                       std::uint64_t dither_seed = 0);
void write_wav(const std::filesystem::path& path, const Waveform& w,
               SampleFormat format = SampleFormat::Pcm16, std::uint64_t dither_seed = 0);

// Accepts PCM 16/24/32-bit and IEEE float32; multi-channel input is averaged
// to mono. Throws BadAudioFile.
Waveform decode_wav(std::string_view bytes);
Waveform read_wav(const std::filesystem::path& path);

struct WavInfo {
  int channels = 0;
  int rate = 0;
  int bits_per_sample = 0;
  int format_tag = 0;  // 1 = PCM, 3 = IEEE float
  std::size_t frames = 0;
};
WavInfo probe_wav(const std::filesystem::path& path);

}  // namespace forge::audio
