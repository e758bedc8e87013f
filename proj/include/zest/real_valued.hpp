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

// Density estimation for real-valued series by quantising to dyadic
// partitions of an interval and mixing finite-alphabet measures across levels.

#ifndef ZEST_REAL_VALUED_HPP_
#define ZEST_REAL_VALUED_HPP_

#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "zest/alphabet.hpp"
#include "zest/coding.hpp"
#include "zest/distribution.hpp"
#include "zest/measures.hpp"
#include "zest/omega.hpp"

namespace zest {

// Level k splits [lo, hi) into 2^k equal half-open cells; hi itself is
// assigned to the last cell.
class PartitionScheme {
 public:
  PartitionScheme(double lo, double hi, std::size_t max_level, bool clamp = false);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t max_level() const { return max_level_; }
  std::size_t cells(std::size_t level) const { return std::size_t{1} << level; }
  double width(std::size_t level) const;
  double cell_low(std::size_t level, Symbol cell) const;
  double cell_mid(std::size_t level, Symbol cell) const;

  // Cell index at `level`. Throws DataError outside [lo, hi] unless clamping.
  Symbol Quantize(double x, std::size_t level) const;

 private:
  double lo_;
  double hi_;
  std::size_t max_level_;
  bool clamp_;
};

struct QuantizedSequence {
  std::size_t level = 0;
  std::vector<Symbol> cells;
};

QuantizedSequence QuantizeSeries(const PartitionScheme& scheme, std::span<const double> xs,
                                 std::size_t level);

// Finite-alphabet measure to use at a level with the given number of cells.
using LevelMeasureFactory =
    std::function<std::shared_ptr<const SequenceMeasure>(std::size_t alphabet_size)>;

LevelMeasureFactory MixtureLevels(OmegaWeights omega = {},
                                  std::size_t max_order = ContextMixture::kUnbounded);
// Per-level conditional normalisation of a compressor's code lengths.
LevelMeasureFactory CodeLevels(std::shared_ptr<const Compressor> code);

// P(x^[s]) / lambda(x^[s]) for one level s.
double QuantizedDensityLevel(const PartitionScheme& scheme, std::span<const double> xs,
                             std::size_t level, const SequenceMeasure& base);
double QuantizedDensityLevel(const PartitionScheme& scheme, std::span<const double> xs,
                             std::size_t level);

// Predictive density for the next value: a mixture over levels of piecewise
// constant densities.
class ConditionalDensity {
 public:
  ConditionalDensity(const PartitionScheme& scheme, std::vector<double> level_weights,
                     std::vector<Distribution> level_next);

  double Density(double x) const;
  // Integral of x times the density.
  double Mean() const;
  // Probability of a union of intervals aligned to the finest cells.
  double Probability(std::span<const std::pair<double, double>> intervals) const;
  // Probability of each finest-level cell.
  Distribution FinestCellProbabilities() const;
  // Posterior weight of levels 1..S.
  const std::vector<double>& level_weights() const { return weights_; }

 private:
  PartitionScheme scheme_;
  std::vector<double> weights_;
  std::vector<Distribution> next_;
};

// r(x_1..x_t) = sum_{k=1..S} w_k P_k(x^[k]) / lambda(x^[k]), with the level
// weights w renormalised over the included levels.
class DensityEstimator {
 public:
  explicit DensityEstimator(PartitionScheme scheme, LevelMeasureFactory levels = MixtureLevels(),
                            OmegaWeights level_omega = {});

  const PartitionScheme& scheme() const { return scheme_; }
  double level_weight(std::size_t level) const { return level_weights_.at(level - 1); }

  double Log2Density(std::span<const double> xs) const;
  double Density(std::span<const double> xs) const { return std::exp2(Log2Density(xs)); }

  ConditionalDensity Condition(std::span<const double> history) const;
  // r(history x) / r(history)
  double CondDensity(std::span<const double> history, double x) const {
    return Condition(history).Density(x);
  }
  double PredictMean(std::span<const double> history) const { return Condition(history).Mean(); }
  double IntervalProb(std::span<const double> history,
                      std::span<const std::pair<double, double>> intervals) const {
    return Condition(history).Probability(intervals);
  }

 private:
  PartitionScheme scheme_;
  std::vector<std::shared_ptr<const SequenceMeasure>> measures_;
  std::vector<double> level_weights_;
};

}  // namespace zest

#endif  // ZEST_REAL_VALUED_HPP_
