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

#include "zest/real_valued.hpp"

#include <cmath>
#include <stdexcept>

#include "zest/errors.hpp"
#include "zest/log_prob.hpp"

namespace zest {

PartitionScheme::PartitionScheme(double lo, double hi, std::size_t max_level, bool clamp)
    : lo_(lo), hi_(hi), max_level_(max_level), clamp_(clamp) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw std::invalid_argument("partition interval must satisfy lo < hi");
  }
  if (max_level > 24) throw std::invalid_argument("at most 24 partition levels");
}

double PartitionScheme::width(std::size_t level) const {
  return (hi_ - lo_) / double(cells(level));
}

double PartitionScheme::cell_low(std::size_t level, Symbol cell) const {
  return lo_ + width(level) * double(cell);
}

double PartitionScheme::cell_mid(std::size_t level, Symbol cell) const {
  return lo_ + width(level) * (double(cell) + 0.5);
}

Symbol PartitionScheme::Quantize(double x, std::size_t level) const {
  if (std::isnan(x)) throw DataError("cannot quantize NaN");
  if (x < lo_ || x > hi_) {
    if (!clamp_) {
      throw DataError("value " + std::to_string(x) + " outside [" + std::to_string(lo_) + ", " +
                      std::to_string(hi_) + "]");
    }
    x = std::clamp(x, lo_, hi_);
  }
  // Scaling by 2^level is exact, so levels refine each other bit for bit.
  const double u = (x - lo_) / (hi_ - lo_);
  const double scaled = std::ldexp(u, int(level));
  const auto last = double(cells(level) - 1);
  return Symbol(std::min(std::floor(scaled), last));
}

QuantizedSequence QuantizeSeries(const PartitionScheme& scheme, std::span<const double> xs,
                                 std::size_t level) {
  QuantizedSequence q{level, {}};
  q.cells.reserve(xs.size());
  for (double x : xs) q.cells.push_back(scheme.Quantize(x, level));
  return q;
}

LevelMeasureFactory MixtureLevels(OmegaWeights omega, std::size_t max_order) {
  return [omega = std::move(omega), max_order](std::size_t n) {
    return std::make_shared<const MarkovMeasure>(MeasureSpec::Mixture(), n, omega, max_order);
  };
}

LevelMeasureFactory CodeLevels(std::shared_ptr<const Compressor> code) {
  return [code = std::move(code)](std::size_t n) {
    return std::make_shared<const CodeMeasure>(code, Alphabet::OfSize(n));
  };
}

namespace {

LogProb LevelProb(const SequenceMeasure& measure, const QuantizedSequence& q) {
  auto predictor = measure.Start();
  for (Symbol c : q.cells) predictor->Update(c);
  return predictor->Probability();
}

}  // namespace

double QuantizedDensityLevel(const PartitionScheme& scheme, std::span<const double> xs,
                             std::size_t level, const SequenceMeasure& base) {
  if (base.alphabet_size() != scheme.cells(level)) {
    throw std::invalid_argument("level measure must have 2^level symbols");
  }
  const auto q = QuantizeSeries(scheme, xs, level);
  const double log2_density =
      LevelProb(base, q).log2() - double(xs.size()) * std::log2(scheme.width(level));
  return std::exp2(log2_density);
}

double QuantizedDensityLevel(const PartitionScheme& scheme, std::span<const double> xs,
                             std::size_t level) {
  MarkovMeasure r(MeasureSpec::Mixture(), scheme.cells(level));
  return QuantizedDensityLevel(scheme, xs, level, r);
}

ConditionalDensity::ConditionalDensity(const PartitionScheme& scheme,
                                       std::vector<double> level_weights,
                                       std::vector<Distribution> level_next)
    : scheme_(scheme), weights_(std::move(level_weights)), next_(std::move(level_next)) {
  if (weights_.size() != next_.size() || weights_.size() != scheme_.max_level()) {
    throw std::invalid_argument("one weight and distribution per level required");
  }
}

double ConditionalDensity::Density(double x) const {
  double d = 0.0;
  for (std::size_t k = 1; k <= weights_.size(); ++k) {
    d += weights_[k - 1] * next_[k - 1][scheme_.Quantize(x, k)] / scheme_.width(k);
  }
  return d;
}

double ConditionalDensity::Mean() const {
  double mean = 0.0;
  for (std::size_t k = 1; k <= weights_.size(); ++k) {
    const auto& p = next_[k - 1];
    double level_mean = 0.0;
    for (Eigen::Index c = 0; c < p.size(); ++c) level_mean += p[c] * scheme_.cell_mid(k, Symbol(c));
    mean += weights_[k - 1] * level_mean;
  }
  return std::clamp(mean, scheme_.lo(), scheme_.hi());
}

Distribution ConditionalDensity::FinestCellProbabilities() const {
  const std::size_t s = scheme_.max_level();
  Distribution out = Distribution::Zero(Eigen::Index(scheme_.cells(s)));
  for (std::size_t k = 1; k <= s; ++k) {
    const double share = std::ldexp(weights_[k - 1], -int(s - k));
    for (Eigen::Index c = 0; c < out.size(); ++c) out[c] += share * next_[k - 1][c >> (s - k)];
  }
  return out;
}

double ConditionalDensity::Probability(
    std::span<const std::pair<double, double>> intervals) const {
  const std::size_t s = scheme_.max_level();
  const double w = scheme_.width(s);
  std::vector<bool> covered(scheme_.cells(s), false);
  auto grid_index = [&](double v) {
    if (v < scheme_.lo() || v > scheme_.hi()) throw DataError("interval outside the partition");
    const double pos = (v - scheme_.lo()) / w;
    const double rounded = std::round(pos);
    if (std::abs(pos - rounded) > 1e-9 * std::max(1.0, rounded)) {
      throw DataError("interval endpoint is not aligned to the finest cells");
    }
    return std::size_t(rounded);
  };
  for (const auto& [a, b] : intervals) {
    if (b < a) throw DataError("interval with hi < lo");
    for (std::size_t c = grid_index(a); c < grid_index(b); ++c) covered[c] = true;
  }
  const auto cells = FinestCellProbabilities();
  double p = 0.0;
  for (std::size_t c = 0; c < covered.size(); ++c) {
    if (covered[c]) p += cells[Eigen::Index(c)];
  }
  return std::clamp(p, 0.0, 1.0);
}

DensityEstimator::DensityEstimator(PartitionScheme scheme, LevelMeasureFactory levels,
                                   OmegaWeights level_omega)
    : scheme_(std::move(scheme)) {
  const std::size_t s = scheme_.max_level();
  if (s == 0) throw std::invalid_argument("density estimation needs at least one level");
  const double included = 1.0 - level_omega.tail(s + 1);
  for (std::size_t k = 1; k <= s; ++k) {
    measures_.push_back(levels(scheme_.cells(k)));
    level_weights_.push_back(level_omega.weight(k) / included);
  }
}

double DensityEstimator::Log2Density(std::span<const double> xs) const {
  std::vector<double> terms;
  for (std::size_t k = 1; k <= scheme_.max_level(); ++k) {
    const auto q = QuantizeSeries(scheme_, xs, k);
    terms.push_back(std::log2(level_weights_[k - 1]) + LevelProb(*measures_[k - 1], q).log2() -
                    double(xs.size()) * std::log2(scheme_.width(k)));
  }
  return LogSumExp2(terms);
}

ConditionalDensity DensityEstimator::Condition(std::span<const double> history) const {
  const std::size_t s = scheme_.max_level();
  std::vector<double> log_w;
  std::vector<Distribution> next;
  for (std::size_t k = 1; k <= s; ++k) {
    const auto q = QuantizeSeries(scheme_, history, k);
    auto predictor = measures_[k - 1]->Start();
    for (Symbol c : q.cells) predictor->Update(c);
    log_w.push_back(std::log2(level_weights_[k - 1]) + predictor->Probability().log2() -
                    double(history.size()) * std::log2(scheme_.width(k)));
    next.push_back(predictor->Predict());
  }
  const double norm = LogSumExp2(log_w);
  std::vector<double> weights;
  for (double v : log_w) weights.push_back(std::exp2(v - norm));
  return ConditionalDensity(scheme_, std::move(weights), std::move(next));
}

}  // namespace zest
