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

#include "forge/audio/waveform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/common/rng.hpp"

namespace forge::audio {
namespace {

static_assert(std::endian::native == std::endian::little, "WAV I/O assumes a little-endian host");

void put_u32(std::string& out, std::uint32_t v) { out.append(reinterpret_cast<const char*>(&v), 4); }
void put_u16(std::string& out, std::uint16_t v) { out.append(reinterpret_cast<const char*>(&v), 2); }

template <typename T>
T get(std::string_view bytes, std::size_t at) {
  T v;
  std::memcpy(&v, bytes.data() + at, sizeof(T));
  return v;
}

struct Parsed {
  WavInfo info;
  std::string_view data;
};

Parsed parse(std::string_view bytes) {
  if (bytes.size() < 12 || bytes.substr(0, 4) != "RIFF" || bytes.substr(8, 4) != "WAVE") {
    throw Error(ErrorCode::BadAudioFile, "not a RIFF/WAVE stream");
  }
  Parsed p;
  bool have_fmt = false, have_data = false;
  std::size_t at = 12;
  while (at + 8 <= bytes.size()) {
    const auto id = bytes.substr(at, 4);
    const auto len = get<std::uint32_t>(bytes, at + 4);
    const std::size_t body = at + 8;
    const std::size_t avail = std::min<std::size_t>(len, bytes.size() - body);
    if (id == "fmt ") {
      if (avail < 16) throw Error(ErrorCode::BadAudioFile, "short fmt chunk");
      p.info.format_tag = get<std::uint16_t>(bytes, body);
      p.info.channels = get<std::uint16_t>(bytes, body + 2);
      p.info.rate = static_cast<int>(get<std::uint32_t>(bytes, body + 4));
      p.info.bits_per_sample = get<std::uint16_t>(bytes, body + 14);
      if (p.info.format_tag == 0xFFFE && avail >= 26) {
        p.info.format_tag = get<std::uint16_t>(bytes, body + 24);  // extensible sub-format
      }
      have_fmt = true;
    } else if (id == "data") {
      p.data = bytes.substr(body, avail);
      have_data = true;
    }
    at = body + len + (len & 1);
  }
  if (!have_fmt || !have_data) throw Error(ErrorCode::BadAudioFile, "missing fmt or data chunk");
  if (p.info.channels <= 0 || p.info.rate <= 0) {
    throw Error(ErrorCode::BadAudioFile, "invalid channel count or rate");
  }
  const bool pcm = p.info.format_tag == 1 &&
                   (p.info.bits_per_sample == 16 || p.info.bits_per_sample == 24 ||
                    p.info.bits_per_sample == 32);
  const bool flt = p.info.format_tag == 3 && p.info.bits_per_sample == 32;
  if (!pcm && !flt) {
    throw Error(ErrorCode::BadAudioFile,
                "unsupported sample format " + std::to_string(p.info.format_tag) + "/" +
                    std::to_string(p.info.bits_per_sample));
  }
  const std::size_t frame_bytes = static_cast<std::size_t>(p.info.channels) * (p.info.bits_per_sample / 8);
  p.info.frames = p.data.size() / frame_bytes;
  return p;
}

}  // namespace

double peak(const Waveform& w) {
  double m = 0.0;
  for (double s : w.samples) m = std::max(m, std::abs(s));
  return m;
}

double rms(const Waveform& w) {
  if (w.empty()) return 0.0;
  double acc = 0.0;
  for (double s : w.samples) acc += s * s;
  return std::sqrt(acc / static_cast<double>(w.size()));
}

std::int64_t to_samples(double seconds, int rate) {
  return static_cast<std::int64_t>(std::llround(seconds * rate));
}

std::string encode_wav(const Waveform& w, SampleFormat format, std::uint64_t dither_seed) {
  const std::uint16_t bits = format == SampleFormat::Pcm16 ? 16 : 32;
  const std::uint32_t data_len = static_cast<std::uint32_t>(w.size() * (bits / 8));
  std::string out;
  out.reserve(44 + data_len);
  out += "RIFF";
  put_u32(out, 36 + data_len);
  out += "WAVEfmt ";
  put_u32(out, 16);
  put_u16(out, format == SampleFormat::Pcm16 ? 1 : 3);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(w.rate));
  put_u32(out, static_cast<std::uint32_t>(w.rate) * (bits / 8));
  put_u16(out, bits / 8);
  put_u16(out, bits);
  out += "data";
  put_u32(out, data_len);
  if (format == SampleFormat::Pcm16) {
    Rng rng(dither_seed);
    for (double s : w.samples) {
      const double tpdf = rng.uniform() - rng.uniform();
      const double v = std::clamp(std::round(s * 32767.0 + tpdf), -32768.0, 32767.0);
      put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
    }
  } else {
    for (double s : w.samples) {
      const float f = static_cast<float>(s);
      out.append(reinterpret_cast<const char*>(&f), 4);
    }
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const Waveform& w, SampleFormat format,
               std::uint64_t dither_seed) {
  write_file_atomic(path, encode_wav(w, format, dither_seed));
}

Waveform decode_wav(std::string_view bytes) {
  const auto p = parse(bytes);
  const int ch = p.info.channels;
  const int width = p.info.bits_per_sample / 8;
  Waveform w;
  w.rate = p.info.rate;
  w.samples.resize(p.info.frames);
  for (std::size_t f = 0; f < p.info.frames; ++f) {
    double acc = 0.0;
    for (int c = 0; c < ch; ++c) {
      const std::size_t at = (f * ch + c) * width;
      double v = 0.0;
      if (p.info.format_tag == 3) {
        v = get<float>(p.data, at);
      } else if (width == 2) {
        v = get<std::int16_t>(p.data, at) / 32768.0;
      } else if (width == 3) {
        const auto b0 = static_cast<std::uint8_t>(p.data[at]);
        const auto b1 = static_cast<std::uint8_t>(p.data[at + 1]);
        const auto b2 = static_cast<std::uint8_t>(p.data[at + 2]);
        std::int32_t x = b0 | (b1 << 8) | (b2 << 16);
        if (x & 0x800000) x -= 0x1000000;
        v = x / 8388608.0;
      } else {
        v = get<std::int32_t>(p.data, at) / 2147483648.0;
      }
      acc += v;
    }
    w.samples[f] = acc / ch;
  }
  for (double s : w.samples) {
    if (!std::isfinite(s)) throw Error(ErrorCode::BadAudioFile, "non-finite sample");
  }
  return w;
}

Waveform read_wav(const std::filesystem::path& path) {
  try {
    return decode_wav(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadAudioFile) {
      throw Error(ErrorCode::BadAudioFile, path.string() + ": " + e.what());
    }
    throw;
  }
}

WavInfo probe_wav(const std::filesystem::path& path) { return parse(read_file(path)).info; }

}  // namespace forge::audio
