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

// Sources with known conditional probabilities, used as ground truth when
// measuring how far a predictor is from the process it predicts.

#ifndef ZEST_SOURCES_HPP_
#define ZEST_SOURCES_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <random>
#include <span>

#include "zest/alphabet.hpp"
#include "zest/distribution.hpp"

namespace zest {

class Source {
 public:
  virtual ~Source() = default;
  virtual std::size_t alphabet_size() const = 0;
  // p(. | past)
  virtual Distribution Conditional(std::span<const Symbol> past) const = 0;
  // Entropy rate in bits per symbol.
  virtual double EntropyRate() const = 0;

  Sequence Sample(std::size_t n, std::mt19937_64& rng) const;
  // log2 p(x_1 .. x_n)
  double Log2Prob(std::span<const Symbol> x) const;
};

class IidSource final : public Source {
 public:
  explicit IidSource(Distribution p);
  static IidSource Bernoulli(double p_one);

  std::size_t alphabet_size() const override { return std::size_t(p_.size()); }
  Distribution Conditional(std::span<const Symbol>) const override { return p_; }
  double EntropyRate() const override;

 private:
  Distribution p_;
};

// First-order chain; row i of `transition` is p(. | previous = i). The first
// symbol is drawn from the stationary distribution.
class MarkovSource final : public Source {
 public:
  explicit MarkovSource(Eigen::MatrixXd transition);

  std::size_t alphabet_size() const override { return std::size_t(transition_.rows()); }
  Distribution Conditional(std::span<const Symbol> past) const override;
  double EntropyRate() const override;
  const Eigen::VectorXd& stationary() const { return stationary_; }

 private:
  Eigen::MatrixXd transition_;
  Eigen::VectorXd stationary_;
};

template <typename Derived>
double Entropy(const Eigen::MatrixBase<Derived>& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log2(p[i]);
  }
  return h;
}

Symbol Draw(const Distribution& p, std::mt19937_64& rng);

}  // namespace zest

#endif  // ZEST_SOURCES_HPP_
