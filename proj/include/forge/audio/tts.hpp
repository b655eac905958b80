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

#include <memory>
#include <string>

#include "forge/audio/waveform.hpp"
#include "forge/common/disk_cache.hpp"
#include "forge/common/http.hpp"
#include "forge/episode/markup.hpp"
#include "forge/episode/types.hpp"

namespace forge::audio {

// Text-to-speech with voice cloning from `voice.timbre_ref`. Implementations
// may return any rate and channel layout that decode_wav understands.
class TtsClient {
 public:
  virtual ~TtsClient() = default;
  virtual Waveform synthesize(const std::string& text, const episode::SpeakerProfile& voice) = 0;
  // Identifies the synthesis backend in cache keys.
  virtual std::string model_tag() const = 0;
};

struct TtsConfig {
  std::string endpoint;  // POST {endpoint}/audio/speech
  std::string model = "tts-1";
  RetryPolicy retry;
  std::string api_key_env = "FORGE_API_KEY";
};

// JSON request {model, input, voice, reference_audio, response_format: "wav"};
// the reply body is WAV bytes.
class HttpTtsClient : public TtsClient {
 public:
  explicit HttpTtsClient(TtsConfig config) : config_(std::move(config)) {}
  Waveform synthesize(const std::string& text, const episode::SpeakerProfile& voice) override;
  std::string model_tag() const override { return "http:" + config_.model; }

 private:
  TtsConfig config_;
};

// Offline stand-in: a deterministic voiced buzz at 24 kHz. Every word becomes
// a tone burst whose pitch depends on the voice and the word, separated by
// short pauses, with 60 ms of leading and trailing silence.
class MockTtsClient : public TtsClient {
 public:
  static constexpr int kRate = 24000;
  static constexpr double kSecondsPerChar = 0.055;

  Waveform synthesize(const std::string& text, const episode::SpeakerProfile& voice) override;
  std::string model_tag() const override { return "mock-tts/v1"; }
};

// Serves repeated (text, voice, backend) requests from disk.
class CachedTtsClient : public TtsClient {
 public:
  CachedTtsClient(std::shared_ptr<TtsClient> inner, std::shared_ptr<DiskCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}
  Waveform synthesize(const std::string& text, const episode::SpeakerProfile& voice) override;
  std::string model_tag() const override { return inner_->model_tag(); }

 private:
  std::shared_ptr<TtsClient> inner_;
  std::shared_ptr<DiskCache> cache_;
};

// Speech for one turn at 16 kHz, clamped to [-1, 1].
// Throws InvalidArgument (empty text), UnsupportedVoice, EmptyAudio,
// ServiceError.
Waveform synthesize_turn(const episode::Turn& turn, const episode::SpeakerProfile& voice,
                         TtsClient& client);

}  // namespace forge::audio
