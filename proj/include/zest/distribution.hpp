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

#ifndef ZEST_DISTRIBUTION_HPP_
#define ZEST_DISTRIBUTION_HPP_

#include <Eigen/Core>

namespace zest {

// Probability vector indexed by symbol.
using Distribution = Eigen::VectorXd;

inline Distribution Uniform(Eigen::Index n) {
  return Distribution::Constant(n, 1.0 / double(n));
}

template <typename Derived>
bool IsDistribution(const Eigen::MatrixBase<Derived>& p, double tol = 1e-12) {
  return p.size() > 0 && (p.array() >= 0.0).all() && std::abs(p.sum() - 1.0) <= tol;
}

}  // namespace zest

#endif  // ZEST_DISTRIBUTION_HPP_
