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

// Laplace (add-one) and Krichevsky (add-half) Markov measures, and the mixture
// R = sum_i w_{i+1} K_i over all orders.

#ifndef ZEST_MEASURES_HPP_
#define ZEST_MEASURES_HPP_

#include <memory>
#include <string>

#include "zest/alphabet.hpp"
#include "zest/context_mixture.hpp"
#include "zest/distribution.hpp"
#include "zest/log_prob.hpp"
#include "zest/omega.hpp"

namespace zest {

// Incremental next-symbol predictor over one alphabet. Samples are separated
// with BeginSample(); contexts never span a separation.
class OnlinePredictor {
 public:
  virtual ~OnlinePredictor() = default;
  virtual std::size_t alphabet_size() const = 0;
  virtual void BeginSample() = 0;
  virtual void Update(Symbol a) = 0;
  virtual Distribution Predict() const = 0;
  // Probability of everything seen so far.
  virtual LogProb Probability() const = 0;
};

// Assigns a probability to every finite word (or multi-sample) over an
// alphabet of fixed size.
class SequenceMeasure {
 public:
  virtual ~SequenceMeasure() = default;
  virtual std::size_t alphabet_size() const = 0;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<OnlinePredictor> Start() const = 0;

  LogProb Prob(const MultiSample& ms) const;
  LogProb Prob(const Sequence& x) const { return Prob(MultiSample(x)); }
  // Distribution of the symbol following the final sample.
  Distribution Next(const MultiSample& ms) const;
  Distribution Next(const Sequence& x) const { return Next(MultiSample(x)); }
};

struct MeasureSpec {
  enum class Kind { kLaplace, kKrichevsky, kMixture };
  Kind kind = Kind::kMixture;
  std::size_t order = 0;  // ignored for kMixture

  static MeasureSpec Laplace(std::size_t m) { return {Kind::kLaplace, m}; }
  static MeasureSpec Krichevsky(std::size_t m) { return {Kind::kKrichevsky, m}; }
  static MeasureSpec Mixture() { return {Kind::kMixture, 0}; }
  // "L2", "K0", "R"; throws std::invalid_argument otherwise.
  static MeasureSpec Parse(const std::string& text);
  std::string to_string() const;
};

// L_m, K_m or R backed by the incremental context engine.
class MarkovMeasure final : public SequenceMeasure {
 public:
  MarkovMeasure(MeasureSpec spec, std::size_t alphabet_size, OmegaWeights omega = {},
                std::size_t max_order = ContextMixture::kUnbounded);

  std::size_t alphabet_size() const override { return alphabet_size_; }
  std::string name() const override { return spec_.to_string(); }
  std::unique_ptr<OnlinePredictor> Start() const override;
  const MeasureSpec& spec() const { return spec_; }

 private:
  MeasureSpec spec_;
  std::size_t alphabet_size_;
  OmegaWeights omega_;
  std::size_t max_order_;
};

// Closed form prod_v prod_a Gamma(nu(va)+alpha)/Gamma(alpha) /
// (Gamma(nu(v)+|A| alpha)/Gamma(|A| alpha)), times |A|^-min(m, t_i) per sample.
double Log2GammaForm(const MultiSample& ms, std::size_t order, double alpha);

LogProb LaplaceProb(const MultiSample& ms, std::size_t order);
LogProb LaplaceProb(const Sequence& x, std::size_t order);
double LaplaceCond(const MultiSample& ms, Symbol a, std::size_t order);
double LaplaceCond(const Sequence& x, Symbol a, std::size_t order);

LogProb KtProb(const MultiSample& ms, std::size_t order);
LogProb KtProb(const Sequence& x, std::size_t order);
double KtCond(const MultiSample& ms, Symbol a, std::size_t order);
double KtCond(const Sequence& x, Symbol a, std::size_t order);

struct MixtureValue {
  LogProb prob;
  bool approximate = false;
};

// Exact unless max_order is below the longest repeated context.
MixtureValue RProb(const MultiSample& ms, const OmegaWeights& omega = {},
                   std::size_t max_order = ContextMixture::kUnbounded);
inline MixtureValue RProb(const Sequence& x) { return RProb(MultiSample(x)); }
// R(z | ms) = R(ms <> z) / R(ms).
double RCond(const MultiSample& ms, const Sequence& z, const OmegaWeights& omega = {});

}  // namespace zest

#endif  // ZEST_MEASURES_HPP_
