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

#include "forge/audio/resample.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "forge/common/error.hpp"

namespace forge::audio {
namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

Waveform resample(const Waveform& w, int target_rate, const ResamplerConfig& config) {
  if (target_rate <= 0 || w.rate <= 0) throw Error(ErrorCode::InvalidArgument, "rates must be positive");
  if (target_rate == w.rate) return w;

  const std::int64_t g = std::gcd(w.rate, target_rate);
  const std::int64_t up = target_rate / g;   // L
  const std::int64_t down = w.rate / g;      // M
  const double in_rate = w.rate;
  const double low_rate = std::min(w.rate, target_rate);

  // Cutoff and half-width expressed in input-sample units.
  const double fc = config.cutoff * 0.5 * low_rate / in_rate;
  const double half = 0.5 * config.taps * in_rate / low_rate;
  const auto reach = static_cast<std::int64_t>(std::ceil(half));
  const double norm = std::cyl_bessel_i(0.0, config.kaiser_beta);

  // table[p][k]: weight of input sample (base + k - reach + 1) for phase p.
  const std::size_t width = static_cast<std::size_t>(2 * reach);
  std::vector<double> table(static_cast<std::size_t>(up) * width);
  for (std::int64_t p = 0; p < up; ++p) {
    const double frac = static_cast<double>(p) / static_cast<double>(up);
    double sum = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      const double x = static_cast<double>(static_cast<std::int64_t>(k) - reach + 1) - frac;
      double h = 0.0;
      if (std::abs(x) < half) {
        const double r = x / half;
        const double win = std::cyl_bessel_i(0.0, config.kaiser_beta * std::sqrt(1.0 - r * r)) / norm;
        h = 2.0 * fc * sinc(2.0 * fc * x) * win;
      }
      table[static_cast<std::size_t>(p) * width + k] = h;
      sum += h;
    }
    // Unit DC gain for every phase.
    for (std::size_t k = 0; k < width; ++k) table[static_cast<std::size_t>(p) * width + k] /= sum;
  }

  const auto n_in = static_cast<std::int64_t>(w.size());
  const auto n_out = static_cast<std::int64_t>(
      std::llround(static_cast<double>(n_in) * target_rate / in_rate));
  Waveform out;
  out.rate = target_rate;
  out.samples.resize(static_cast<std::size_t>(n_out));
  for (std::int64_t j = 0; j < n_out; ++j) {
    const std::int64_t pos = j * down;
    const std::int64_t base = pos / up;
    const std::int64_t phase = pos % up;
    const double* h = &table[static_cast<std::size_t>(phase) * width];
    double acc = 0.0;
    const std::int64_t first = base - reach + 1;
    for (std::size_t k = 0; k < width; ++k) {
      const std::int64_t i = first + static_cast<std::int64_t>(k);
      if (i >= 0 && i < n_in) acc += h[k] * w.samples[static_cast<std::size_t>(i)];
    }
    out.samples[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

}  // namespace forge::audio
