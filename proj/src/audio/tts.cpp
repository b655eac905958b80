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

#include "forge/audio/tts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include <json.hpp>

#include "forge/audio/resample.hpp"
#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/common/rng.hpp"

namespace forge::audio {

Waveform HttpTtsClient::synthesize(const std::string& text, const episode::SpeakerProfile& voice) {
  const nlohmann::json req{{"model", config_.model},
                           {"input", text},
                           {"voice", voice.id},
                           {"reference_audio", voice.timbre_ref},
                           {"response_format", "wav"}};
  std::vector<std::pair<std::string, std::string>> headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
    headers.emplace_back("Authorization", std::string("Bearer ") + key);
  }
  const auto body = http_post(config_.endpoint + "/audio/speech", req.dump(), "application/json",
                              headers, config_.retry);
  try {
    return decode_wav(body);
  } catch (const Error& e) {
    throw Error(ErrorCode::ServiceError, std::string("TTS reply is not audio: ") + e.what());
  }
}

Waveform MockTtsClient::synthesize(const std::string& text, const episode::SpeakerProfile& voice) {
  Waveform w;
  w.rate = kRate;
  const auto lead = static_cast<std::size_t>(0.06 * kRate);
  w.samples.assign(lead, 0.0);
  const double base_pitch = 90.0 + static_cast<double>(derive_seed(0, voice.id) % 160);
  for (const auto& word : split(text, ' ')) {
    if (word.empty()) continue;
    const auto n = static_cast<std::size_t>(kSecondsPerChar * static_cast<double>(word.size()) * kRate);
    const double f0 = base_pitch * (1.0 + 0.1 * static_cast<double>(derive_seed(1, word) % 5));
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / kRate;
      const double env = std::sin(std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
      double v = 0.0;
      for (int h = 1; h <= 4; ++h) v += std::sin(2.0 * std::numbers::pi * f0 * h * t) / h;
      w.samples.push_back(0.25 * env * v);
    }
    // Inter-word pause.
    w.samples.insert(w.samples.end(), static_cast<std::size_t>(0.03 * kRate), 0.0);
  }
  w.samples.insert(w.samples.end(), lead, 0.0);
  return w;
}

Waveform CachedTtsClient::synthesize(const std::string& text, const episode::SpeakerProfile& voice) {
  const auto key = cache_key({"tts", inner_->model_tag(), voice.id, voice.timbre_ref, text});
  const auto bytes = cache_->get_or_compute(key, [&] {
    return encode_wav(inner_->synthesize(text, voice), SampleFormat::Float32);
  });
  return decode_wav(bytes);
}

Waveform synthesize_turn(const episode::Turn& turn, const episode::SpeakerProfile& voice,
                         TtsClient& client) {
  if (trim(turn.text).empty()) throw Error(ErrorCode::InvalidArgument, "turn text is empty");
  if (voice.timbre_ref.empty()) {
    throw Error(ErrorCode::UnsupportedVoice, "voice " + voice.id + " has no timbre reference");
  }
  Waveform raw = client.synthesize(turn.text, voice);
  if (raw.empty()) throw Error(ErrorCode::EmptyAudio, "TTS returned no samples");
  for (double s : raw.samples) {
    if (!std::isfinite(s)) throw Error(ErrorCode::ServiceError, "TTS returned non-finite samples");
  }
  Waveform out = resample(raw, kCanonicalRate);
  if (out.empty()) throw Error(ErrorCode::EmptyAudio, "clip shorter than one output sample");
  for (double& s : out.samples) s = std::clamp(s, -1.0, 1.0);
  return out;
}

}  // namespace forge::audio
