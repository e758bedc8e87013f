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

#ifndef ZEST_LOG_PROB_HPP_
#define ZEST_LOG_PROB_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

namespace zest {

// Probability stored as its binary logarithm. Zero probability is -inf.
class LogProb {
 public:
  constexpr LogProb() = default;  // probability one

  static LogProb FromLog2(double log2_value) {
    if (std::isnan(log2_value) || log2_value > 1e-9) {
      throw std::domain_error("LogProb: log2 value must be <= 0");
    }
    return LogProb(std::min(log2_value, 0.0));
  }
  static LogProb FromLinear(double p) {
    if (!(p >= 0.0 && p <= 1.0 + 1e-12)) {
      throw std::domain_error("LogProb: probability outside [0,1]");
    }
    return LogProb(p == 0.0 ? -std::numeric_limits<double>::infinity()
                            : std::min(std::log2(p), 0.0));
  }
  static LogProb Zero() {
    return LogProb(-std::numeric_limits<double>::infinity());
  }
  static constexpr LogProb One() { return LogProb(); }

  double log2() const { return log2_; }
  double linear() const { return std::exp2(log2_); }
  bool is_zero() const { return std::isinf(log2_); }
  // Code length in bits, -log2 p.
  double bits() const { return -log2_; }

  friend LogProb operator*(LogProb a, LogProb b) {
    return LogProb(a.log2_ + b.log2_);
  }
  LogProb& operator*=(LogProb other) {
    log2_ += other.log2_;
    return *this;
  }
  // Ratio of probabilities; caller guarantees a <= b (a conditional).
  friend LogProb operator/(LogProb a, LogProb b) {
    return LogProb(std::min(a.log2_ - b.log2_, 0.0));
  }
  friend bool operator==(LogProb a, LogProb b) = default;
  friend auto operator<=>(LogProb a, LogProb b) = default;

 private:
  explicit constexpr LogProb(double v) : log2_(v) {}
  double log2_ = 0.0;
};

// log2(sum_i 2^{v_i}) without overflow; -inf for an empty or all -inf input.
inline double LogSumExp2(std::span<const double> values) {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : values) top = std::max(top, v);
  if (std::isinf(top)) return top;
  double acc = 0.0;
  for (double v : values) acc += std::exp2(v - top);
  return top + std::log2(acc);
}

inline double LogAddExp2(double a, double b) {
  if (a < b) std::swap(a, b);
  if (std::isinf(b)) return a;
  return a + std::log2(1.0 + std::exp2(b - a));
}

}  // namespace zest

#endif  // ZEST_LOG_PROB_HPP_
