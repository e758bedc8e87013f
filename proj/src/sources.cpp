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

#include "zest/sources.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace zest {

Symbol Draw(const Distribution& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  for (Eigen::Index a = 0; a + 1 < p.size(); ++a) {
    if (u < p[a]) return Symbol(a);
    u -= p[a];
  }
  return Symbol(p.size() - 1);
}

Sequence Source::Sample(std::size_t n, std::mt19937_64& rng) const {
  std::vector<Symbol> x;
  x.reserve(n);
  for (std::size_t i = 0; i < n; ++i) x.push_back(Draw(Conditional(x), rng));
  return Sequence(Alphabet::OfSize(alphabet_size()), std::move(x));
}

double Source::Log2Prob(std::span<const Symbol> x) const {
  double lp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) lp += std::log2(Conditional(x.first(i))[x[i]]);
  return lp;
}

IidSource::IidSource(Distribution p) : p_(std::move(p)) {
  if (!IsDistribution(p_, 1e-9)) throw std::invalid_argument("not a probability vector");
}

IidSource IidSource::Bernoulli(double p_one) {
  if (!(p_one >= 0.0 && p_one <= 1.0)) throw std::invalid_argument("Bernoulli p outside [0,1]");
  Distribution p(2);
  p << 1.0 - p_one, p_one;
  return IidSource(p);
}

double IidSource::EntropyRate() const { return Entropy(p_); }

MarkovSource::MarkovSource(Eigen::MatrixXd transition) : transition_(std::move(transition)) {
  const auto k = transition_.rows();
  if (k == 0 || transition_.cols() != k) throw std::invalid_argument("transition must be square");
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!IsDistribution(transition_.row(i).transpose(), 1e-9)) {
      throw std::invalid_argument("transition rows must be probability vectors");
    }
  }
  // pi (P - I) = 0 with sum(pi) = 1, solved in the least-squares sense.
  Eigen::MatrixXd system(k + 1, k);
  system.topRows(k) = transition_.transpose() - Eigen::MatrixXd::Identity(k, k);
  system.row(k).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs[k] = 1.0;
  stationary_ = system.colPivHouseholderQr().solve(rhs);
  stationary_ = stationary_.cwiseMax(0.0);
  stationary_ /= stationary_.sum();
}

Distribution MarkovSource::Conditional(std::span<const Symbol> past) const {
  if (past.empty()) return stationary_;
  return transition_.row(past.back()).transpose();
}

double MarkovSource::EntropyRate() const {
  double h = 0.0;
  for (Eigen::Index i = 0; i < transition_.rows(); ++i) {
    h += stationary_[i] * Entropy(transition_.row(i).transpose());
  }
  return h;
}

}  // namespace zest
