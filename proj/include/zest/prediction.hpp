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

#ifndef ZEST_PREDICTION_HPP_
#define ZEST_PREDICTION_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zest/alphabet.hpp"
#include "zest/distribution.hpp"
#include "zest/measures.hpp"
#include "zest/sources.hpp"

namespace zest {

// sum_a p(a) log2(p(a)/q(a)); +inf when q vanishes on p's support.
template <typename P, typename Q>
double KlDivergence(const Eigen::MatrixBase<P>& p, const Eigen::MatrixBase<Q>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("distributions differ in size");
  double kl = 0.0;
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    if (p[a] <= 0.0) continue;
    if (q[a] <= 0.0) return std::numeric_limits<double>::infinity();
    kl += p[a] * std::log2(p[a] / q[a]);
  }
  return std::max(kl, 0.0);
}

// L1 distance, in [0, 2].
template <typename P, typename Q>
double VariationDistance(const Eigen::MatrixBase<P>& p, const Eigen::MatrixBase<Q>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("distributions differ in size");
  return (p - q).template lpNorm<1>();
}

// KL >= (log2 e / 2) * ||p - q||_1^2.
template <typename P, typename Q>
bool PinskerHolds(const Eigen::MatrixBase<P>& p, const Eigen::MatrixBase<Q>& q) {
  const double v = VariationDistance(p, q);
  return KlDivergence(p, q) + 1e-12 >= std::numbers::log2e / 2.0 * v * v;
}

struct PredictionStep {
  Distribution predicted;
  Symbol realized = 0;
  double logloss = 0.0;  // -log2 predicted[realized]
};

struct PredictionTrace {
  std::vector<PredictionStep> steps;
  double total_logloss = 0.0;
  // Some step gave the realized symbol probability zero.
  bool infinite_loss = false;

  double cesaro_average() const {
    return steps.empty() ? 0.0 : total_logloss / double(steps.size());
  }
  // One JSON object per line: step, distribution, realized, logloss.
  void WriteJsonLines(std::ostream& out) const;
  // Header plus a single row: steps,total_logloss,cesaro_average,infinite_loss.
  void WriteSummaryCsv(std::ostream& out) const;
};

// Predicts x one symbol at a time. Priming samples come first, each
// diamond-separated, and x is the final sample.
PredictionTrace OnlinePredict(const SequenceMeasure& measure, const Sequence& x,
                              const std::optional<MultiSample>& priming = std::nullopt);

// Alphabet X x Y encoded as x * |Y| + y.
struct ProductAlphabet {
  std::size_t x_size;
  std::size_t y_size;
  std::size_t size() const { return x_size * y_size; }
  Symbol Pair(Symbol x, Symbol y) const { return Symbol(x * y_size + y); }
};

// mu(history, (x, y)) normalised over x for the given y.
Distribution SideInfoPredict(const SequenceMeasure& joint, const ProductAlphabet& alphabet,
                             std::span<const std::pair<Symbol, Symbol>> history, Symbol y);

// Same, from a predictor that has already consumed the history.
Distribution SideInfoFromJoint(const Distribution& joint_next, const ProductAlphabet& alphabet,
                               Symbol y);

struct CesaroPoint {
  std::size_t t = 0;
  double mean = 0.0;      // estimate of (1/t) E log2(p/gamma)
  double std_error = 0.0;
};

// Monte Carlo estimate of the Cesaro error at each checkpoint (ascending).
std::vector<CesaroPoint> CesaroErrorCurve(const Source& truth, const SequenceMeasure& predictor,
                                          std::span<const std::size_t> checkpoints,
                                          std::size_t runs, std::uint64_t seed);

// Exact value by summing over all of A^t; t <= 20.
double CesaroErrorExact(const Source& truth, const SequenceMeasure& predictor, std::size_t t);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// E KL(p(.|x_1..t) || gamma(.|x_1..t)), averaged over independent runs.
Estimate ExpectedStepKl(const Source& truth, const SequenceMeasure& predictor, std::size_t t,
                        std::size_t runs, std::uint64_t seed);

}  // namespace zest

#endif  // ZEST_PREDICTION_HPP_
