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

#include "zest/measures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zest {

LogProb SequenceMeasure::Prob(const MultiSample& ms) const {
  if (ms.alphabet()->size() != alphabet_size()) {
    throw std::invalid_argument("sample alphabet does not match measure");
  }
  auto predictor = Start();
  for (std::size_t i = 0; i < ms.sample_count(); ++i) {
    if (i > 0) predictor->BeginSample();
    for (Symbol a : ms.samples()[i].data()) predictor->Update(a);
  }
  return predictor->Probability();
}

Distribution SequenceMeasure::Next(const MultiSample& ms) const {
  if (ms.alphabet()->size() != alphabet_size()) {
    throw std::invalid_argument("sample alphabet does not match measure");
  }
  auto predictor = Start();
  for (std::size_t i = 0; i < ms.sample_count(); ++i) {
    if (i > 0) predictor->BeginSample();
    for (Symbol a : ms.samples()[i].data()) predictor->Update(a);
  }
  return predictor->Predict();
}

MeasureSpec MeasureSpec::Parse(const std::string& text) {
  if (text == "R") return Mixture();
  if (text.size() >= 2 && (text[0] == 'L' || text[0] == 'K')) {
    std::size_t used = 0;
    unsigned long order = 0;
    try {
      order = std::stoul(text.substr(1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == text.size() - 1) {
      return text[0] == 'L' ? Laplace(order) : Krichevsky(order);
    }
  }
  throw std::invalid_argument("unknown measure '" + text + "' (expected R, L<m> or K<m>)");
}

std::string MeasureSpec::to_string() const {
  switch (kind) {
    case Kind::kLaplace:
      return "L" + std::to_string(order);
    case Kind::kKrichevsky:
      return "K" + std::to_string(order);
    case Kind::kMixture:
      break;
  }
  return "R";
}

namespace {

class MarkovPredictor final : public OnlinePredictor {
 public:
  MarkovPredictor(MeasureSpec spec, std::size_t alphabet_size, const OmegaWeights& omega,
                  std::size_t max_order)
      : spec_(spec),
        omega_(omega),
        engine_(alphabet_size,
                {.alpha = spec.kind == MeasureSpec::Kind::kLaplace ? 1.0 : 0.5,
                 .max_order = spec.kind == MeasureSpec::Kind::kMixture ? max_order
                                                                       : spec.order + 1}) {}

  std::size_t alphabet_size() const override { return engine_.alphabet_size(); }
  void BeginSample() override { engine_.BeginSample(); }
  void Update(Symbol a) override { engine_.Append(a); }
  Distribution Predict() const override {
    return spec_.kind == MeasureSpec::Kind::kMixture ? engine_.NextMixture(omega_)
                                                     : engine_.NextOrder(spec_.order);
  }
  LogProb Probability() const override {
    const double v = spec_.kind == MeasureSpec::Kind::kMixture ? engine_.Log2Mixture(omega_)
                                                               : engine_.Log2Order(spec_.order);
    return LogProb::FromLog2(std::min(v, 0.0));
  }

 private:
  MeasureSpec spec_;
  OmegaWeights omega_;
  ContextMixture engine_;
};

}  // namespace

MarkovMeasure::MarkovMeasure(MeasureSpec spec, std::size_t alphabet_size, OmegaWeights omega,
                             std::size_t max_order)
    : spec_(spec), alphabet_size_(alphabet_size), omega_(std::move(omega)), max_order_(max_order) {
  if (alphabet_size == 0) throw std::invalid_argument("alphabet size must be positive");
}

std::unique_ptr<OnlinePredictor> MarkovMeasure::Start() const {
  return std::make_unique<MarkovPredictor>(spec_, alphabet_size_, omega_, max_order_);
}

double Log2GammaForm(const MultiSample& ms, std::size_t order, double alpha) {
  const double n = double(ms.alphabet()->size());
  double log_e = 0.0;  // natural log
  for (const auto& s : ms.samples()) {
    log_e -= double(std::min(order, s.size())) * std::log(n);
  }
  const auto counts = CountContexts(ms, order);
  const double lg_alpha = std::lgamma(alpha);
  const double lg_row = std::lgamma(n * alpha);
  for (const auto& [context, row] : counts.table()) {
    double row_sum = 0.0;
    for (auto c : row) {
      if (c == 0) continue;
      log_e += std::lgamma(double(c) + alpha) - lg_alpha;
      row_sum += double(c);
    }
    log_e -= std::lgamma(row_sum + n * alpha) - lg_row;
  }
  return log_e / std::numbers::ln2;
}

LogProb LaplaceProb(const MultiSample& ms, std::size_t order) {
  return LogProb::FromLog2(std::min(Log2GammaForm(ms, order, 1.0), 0.0));
}
LogProb LaplaceProb(const Sequence& x, std::size_t order) {
  return LaplaceProb(MultiSample(x), order);
}
double LaplaceCond(const MultiSample& ms, Symbol a, std::size_t order) {
  return std::exp2(Log2GammaForm(ms.extended(a), order, 1.0) - Log2GammaForm(ms, order, 1.0));
}
double LaplaceCond(const Sequence& x, Symbol a, std::size_t order) {
  return LaplaceCond(MultiSample(x), a, order);
}

LogProb KtProb(const MultiSample& ms, std::size_t order) {
  return LogProb::FromLog2(std::min(Log2GammaForm(ms, order, 0.5), 0.0));
}
LogProb KtProb(const Sequence& x, std::size_t order) { return KtProb(MultiSample(x), order); }
double KtCond(const MultiSample& ms, Symbol a, std::size_t order) {
  return std::exp2(Log2GammaForm(ms.extended(a), order, 0.5) - Log2GammaForm(ms, order, 0.5));
}
double KtCond(const Sequence& x, Symbol a, std::size_t order) {
  return KtCond(MultiSample(x), a, order);
}

MixtureValue RProb(const MultiSample& ms, const OmegaWeights& omega, std::size_t max_order) {
  ContextMixture engine(ms.alphabet()->size(), {.alpha = 0.5, .max_order = max_order});
  for (std::size_t i = 0; i < ms.sample_count(); ++i) {
    if (i > 0) engine.BeginSample();
    engine.AppendAll(ms.samples()[i].data());
  }
  return {LogProb::FromLog2(engine.Log2Mixture(omega)), engine.approximate()};
}

double RCond(const MultiSample& ms, const Sequence& z, const OmegaWeights& omega) {
  if (z.empty()) throw std::invalid_argument("continuation must be nonempty");
  const auto joint = RProb(ms.with_sample(z), omega).prob;
  return (joint / RProb(ms, omega).prob).linear();
}

}  // namespace zest
