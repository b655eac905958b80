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
#include <vector>

namespace forge::codec {

// Orthonormal DCT-II and its inverse (DCT-III) of length n, computed with a
// cached n x n basis. Both directions preserve the Euclidean norm.
class Dct {
 public:
  explicit Dct(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::span<const double> in, std::span<double> out) const;
  void inverse(std::span<const double> in, std::span<double> out) const;

 private:
  std::size_t n_;
  std::vector<double> basis_;  // basis_[k * n + i] = alpha_k cos(pi (2i+1) k / 2n)
};

}  // namespace forge::codec
