// Copyright 2026 The Zest Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZEST_OMEGA_HPP_
#define ZEST_OMEGA_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace zest {

// A strictly positive distribution on {1, 2, ...} described by its tail
// sums tail(i) = sum_{j >= i} w_j, with tail(1) = 1.
class OmegaWeights {
 public:
  using TailFn = std::function<double(std::size_t)>;

  // w_1 = 1 - 1/log2(3), w_i = 1/log2(i+1) - 1/log2(i+2).
  OmegaWeights() : tail_([](std::size_t i) { return 1.0 / std::log2(double(i) + 1.0); }) {}
  explicit OmegaWeights(TailFn tail) : tail_(std::move(tail)) {}

  double weight(std::size_t i) const {
    Check(i);
    return tail_(i) - tail_(i + 1);
  }
  double tail(std::size_t i) const {
    Check(i);
    return tail_(i);
  }
  double log2_weight(std::size_t i) const { return std::log2(weight(i)); }
  double log2_tail(std::size_t i) const { return std::log2(tail(i)); }

 private:
  static void Check(std::size_t i) {
    if (i == 0) throw std::invalid_argument("omega weights are indexed from 1");
  }
  TailFn tail_;
};

// Geometric alternative, w_i = 2^-i.
inline OmegaWeights GeometricOmega() {
  return OmegaWeights([](std::size_t i) { return std::exp2(1.0 - double(i)); });
}

}  // namespace zest

#endif  // ZEST_OMEGA_HPP_
