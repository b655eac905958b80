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

#include "forge/codec/dct.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace forge::codec {

Dct::Dct(std::size_t n) : n_(n), basis_(n * n) {
  const double nn = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double alpha = k == 0 ? std::sqrt(1.0 / nn) : std::sqrt(2.0 / nn);
    for (std::size_t i = 0; i < n; ++i) {
      basis_[k * n + i] =
          alpha * std::cos(std::numbers::pi * (2.0 * static_cast<double>(i) + 1.0) *
                           static_cast<double>(k) / (2.0 * nn));
    }
  }
}

void Dct::forward(std::span<const double> in, std::span<double> out) const {
  assert(in.size() == n_ && out.size() == n_);
  for (std::size_t k = 0; k < n_; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) acc += basis_[k * n_ + i] * in[i];
    out[k] = acc;
  }
}

void Dct::inverse(std::span<const double> in, std::span<double> out) const {
  assert(in.size() == n_ && out.size() == n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n_; ++k) acc += basis_[k * n_ + i] * in[k];
    out[i] = acc;
  }
}

}  // namespace forge::codec
