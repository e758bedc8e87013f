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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "zest/prediction.hpp"
#include "zest/sources.hpp"

using namespace zest;

namespace {

AlphabetPtr B() { return Alphabet::Binary(); }
Sequence W(const char* s) { return Sequence::FromString(B(), s); }

Distribution D(std::initializer_list<double> v) {
  Distribution d(Eigen::Index(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d[i++] = x;
  return d;
}

Distribution RandomDistribution(std::mt19937_64& rng, Eigen::Index k) {
  std::exponential_distribution<double> e(1.0);
  Distribution d(k);
  for (Eigen::Index i = 0; i < k; ++i) d[i] = e(rng);
  return d / d.sum();
}

}  // namespace

TEST_CASE("KL divergence") {
  CHECK(KlDivergence(D({0.5, 0.5}), D({0.5, 0.5})) == 0.0);
  CHECK(KlDivergence(D({1, 0}), D({0.5, 0.5})) == doctest::Approx(1.0));
  CHECK(KlDivergence(D({0.75, 0.25}), D({0.5, 0.5})) ==
        doctest::Approx(0.75 * std::log2(3.0) - 1.0).epsilon(1e-12));
  CHECK(KlDivergence(D({0.75, 0.25}), D({0.5, 0.5})) == doctest::Approx(0.18872).epsilon(1e-4));
  CHECK(std::isinf(KlDivergence(D({0.5, 0.5}), D({1, 0}))));
  CHECK_THROWS(KlDivergence(D({1}), D({0.5, 0.5})));
}

TEST_CASE("variation distance and Pinsker") {
  CHECK(VariationDistance(D({0.3, 0.7}), D({0.3, 0.7})) == 0.0);
  CHECK(PinskerHolds(D({0.3, 0.7}), D({0.3, 0.7})));
  CHECK(VariationDistance(D({1, 0}), D({0, 1})) == 2.0);
  std::mt19937_64 rng(1);
  bool all = true;
  for (int i = 0; i < 10000; ++i) {
    const auto k = Eigen::Index(2 + rng() % 5);
    all = all && PinskerHolds(RandomDistribution(rng, k), RandomDistribution(rng, k));
  }
  CHECK(all);
}

TEST_CASE("on-line prediction with R") {
  MarkovMeasure r(MeasureSpec::Mixture(), 2);
  const auto trace = OnlinePredict(r, W("01"));
  REQUIRE(trace.steps.size() == 2);
  CHECK(trace.steps[0].predicted[0] == doctest::Approx(0.5));
  const double r0 = RProb(W("0")).prob.linear();
  const double r01 = RProb(W("01")).prob.linear();
  CHECK(trace.steps[1].predicted[1] == doctest::Approx(r01 / r0).epsilon(1e-12));
  CHECK(trace.total_logloss == doctest::Approx(-std::log2(r01)).epsilon(1e-9));
}

TEST_CASE("on-line prediction with K0 ends at 7/12") {
  MarkovMeasure k0(MeasureSpec::Krichevsky(0), 2);
  const auto trace = OnlinePredict(k0, W("010100"));
  CHECK(trace.steps.back().predicted[0] == doctest::Approx(7.0 / 12));
  CHECK(trace.steps.back().predicted[1] == doctest::Approx(5.0 / 12));
}

TEST_CASE("priming follows the diamond form") {
  MarkovMeasure r(MeasureSpec::Mixture(), 2);
  const MultiSample priming(W("0101"));
  const auto x = W("1011");
  const auto trace = OnlinePredict(r, x, priming);
  Sequence prefix(B());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto before = priming.with_sample(prefix);
    const auto after = priming.with_sample(prefix.appended(x[i]));
    const double expect = std::exp2(RProb(after).prob.log2() - RProb(before).prob.log2());
    CHECK(trace.steps[i].predicted[x[i]] == doctest::Approx(expect).epsilon(1e-12));
    prefix.push_back(x[i]);
  }
  CHECK(trace.total_logloss ==
        doctest::Approx(-std::log2(RCond(priming, x))).epsilon(1e-9));
}

TEST_CASE("trace invariants on a longer sequence") {
  std::mt19937_64 rng(4);
  const auto x = IidSource::Bernoulli(0.3).Sample(2000, rng);
  for (const char* spec : {"R", "K1", "L0"}) {
    MarkovMeasure mu(MeasureSpec::Parse(spec), 2);
    const auto trace = OnlinePredict(mu, x);
    for (const auto& s : trace.steps) {
      CHECK(IsDistribution(s.predicted));
      CHECK((s.predicted.array() > 0.0).all());
    }
    CHECK(trace.total_logloss == doctest::Approx(-mu.Prob(x).log2()).epsilon(1e-9));
    CHECK_FALSE(trace.infinite_loss);
  }
}

TEST_CASE("trace export") {
  MarkovMeasure k0(MeasureSpec::Krichevsky(0), 2);
  const auto trace = OnlinePredict(k0, W("011"));
  std::ostringstream lines;
  trace.WriteJsonLines(lines);
  std::istringstream in(lines.str());
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    CHECK(line.find("\"logloss\"") != std::string::npos);
    ++count;
  }
  CHECK(count == 3);
  std::ostringstream csv;
  trace.WriteSummaryCsv(csv);
  CHECK(csv.str().find("steps") != std::string::npos);
}

TEST_CASE("side information") {
  const ProductAlphabet xy{2, 2};
  MarkovMeasure r(MeasureSpec::Mixture(), 4);
  for (Symbol y : {0u, 1u}) {
    const auto p = SideInfoPredict(r, xy, {}, y);
    CHECK(p[0] == doctest::Approx(0.5));
  }
  const std::vector<std::pair<Symbol, Symbol>> history{{0, 1}, {1, 1}, {0, 0}};
  const Symbol y4 = 1;
  std::vector<Symbol> joint;
  for (auto [x, y] : history) joint.push_back(xy.Pair(x, y));
  const auto alphabet = Alphabet::OfSize(4);
  double num[2];
  for (Symbol x : {0u, 1u}) {
    auto w = joint;
    w.push_back(xy.Pair(x, y4));
    num[x] = RProb(Sequence(alphabet, w)).prob.linear();
  }
  const auto p = SideInfoPredict(r, xy, history, y4);
  CHECK(p[0] == doctest::Approx(num[0] / (num[0] + num[1])).epsilon(1e-12));

  MarkovMeasure r2(MeasureSpec::Mixture(), 3);
  const auto point = SideInfoPredict(r2, ProductAlphabet{1, 3}, {}, 2);
  CHECK(point.size() == 1);
  CHECK(point[0] == 1.0);
  CHECK_THROWS(SideInfoPredict(r2, xy, {}, 0));
}

TEST_CASE("uninformative side information matches the plain predictor") {
  std::mt19937_64 rng(12);
  const auto xs = IidSource::Bernoulli(0.25).Sample(10000, rng);
  const ProductAlphabet xy{2, 2};
  MarkovMeasure joint(MeasureSpec::Mixture(), 4);
  MarkovMeasure plain(MeasureSpec::Mixture(), 2);
  auto jp = joint.Start();
  auto pp = plain.Start();
  double gap = 0.0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    const Symbol y = Symbol(rng() & 1u);
    if (t + 100 >= xs.size()) {
      gap += VariationDistance(SideInfoFromJoint(jp->Predict(), xy, y), pp->Predict());
    }
    jp->Update(xy.Pair(xs[t], y));
    pp->Update(xs[t]);
  }
  CHECK(gap / 100.0 < 0.05);
}

TEST_CASE("Cesaro error of the true source is zero") {
  const auto fair = IidSource::Bernoulli(0.5);
  CHECK(CesaroErrorExact(fair, MarkovMeasure(MeasureSpec::Krichevsky(0), 2), 1) == doctest::Approx(0.0));
  // A K_0 predictor on a fair coin, exhaustive at t = 10.
  const double exact = CesaroErrorExact(fair, MarkovMeasure(MeasureSpec::Krichevsky(0), 2), 10);
  CHECK(exact > 0.0);
  CHECK(exact <= (std::log2(10.0) + 4.0) / 20.0);
  const std::size_t cps[] = {10};
  const auto mc = CesaroErrorCurve(fair, MarkovMeasure(MeasureSpec::Krichevsky(0), 2), cps, 4000, 3);
  CHECK(mc[0].mean == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("Krichevsky redundancy on a fair coin") {
  const auto fair = IidSource::Bernoulli(0.5);
  MarkovMeasure k0(MeasureSpec::Krichevsky(0), 2);
  const std::size_t cps[] = {100, 1000};
  for (const auto& pt : CesaroErrorCurve(fair, k0, cps, 200, 17)) {
    CHECK(pt.mean <= (std::log2(double(pt.t)) + 4.0) / (2.0 * double(pt.t)));
  }
}

TEST_CASE("R error decreases on a Markov chain") {
  Eigen::MatrixXd t(2, 2);
  t << 0.9, 0.1, 0.3, 0.7;
  const MarkovSource chain(t);
  MarkovMeasure r(MeasureSpec::Mixture(), 2);
  const std::size_t cps[] = {100, 10000};
  const auto curve = CesaroErrorCurve(chain, r, cps, 100, 23);
  CHECK(curve[1].mean < curve[0].mean);
}

TEST_CASE("sources") {
  Eigen::MatrixXd t(2, 2);
  t << 0.9, 0.1, 0.2, 0.8;
  const MarkovSource chain(t);
  CHECK(chain.stationary()[0] == doctest::Approx(2.0 / 3));
  CHECK(IidSource::Bernoulli(0.2).EntropyRate() == doctest::Approx(0.7219).epsilon(1e-4));
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.4, 0.5, 0.5;
  CHECK_THROWS(MarkovSource(bad));
  CHECK_THROWS(IidSource::Bernoulli(1.5));
}
