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

#include "doctest.h"
#include "zest/measures.hpp"

using namespace zest;

namespace {

AlphabetPtr B() { return Alphabet::Binary(); }
Sequence W(const char* s) { return Sequence::FromString(B(), s); }
MultiSample MS(std::initializer_list<const char*> parts) {
  std::vector<Sequence> seqs;
  for (const char* p : parts) seqs.push_back(W(p));
  return DiamondConcat(seqs);
}

Sequence FromBits(unsigned bits, std::size_t len) {
  std::vector<Symbol> d(len);
  for (std::size_t i = 0; i < len; ++i) d[i] = (bits >> i) & 1u;
  return Sequence(B(), d);
}

}  // namespace

TEST_CASE("omega weights") {
  OmegaWeights w;
  CHECK(w.weight(1) == doctest::Approx(0.36907).epsilon(1e-4));
  CHECK(w.weight(2) == doctest::Approx(0.13093).epsilon(1e-4));
  CHECK(w.weight(3) == doctest::Approx(0.06932).epsilon(1e-4));
  CHECK(w.tail(1) == 1.0);
  CHECK(w.tail(5) == doctest::Approx(1.0 / std::log2(6.0)));
  CHECK_THROWS_AS(w.weight(0), std::invalid_argument);
  double s = 0.0;
  for (std::size_t i = 1; i < 1000; ++i) s += w.weight(i);
  CHECK(s + w.tail(1000) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("log-domain helpers") {
  CHECK(LogProb::FromLinear(0.25).log2() == -2.0);
  CHECK(LogProb::Zero().is_zero());
  CHECK((LogProb::FromLinear(0.5) * LogProb::FromLinear(0.5)).linear() == 0.25);
  CHECK_THROWS(LogProb::FromLinear(1.5));
  CHECK_THROWS(LogProb::FromLog2(0.5));
  std::vector<double> v{-1.0, -1.0};
  CHECK(LogSumExp2(v) == doctest::Approx(0.0));
  CHECK(LogAddExp2(-2000.0, -2000.0) == doctest::Approx(-1999.0));
  CHECK(std::isinf(LogSumExp2(std::span<const double>{})));
}

TEST_CASE("Laplace measure") {
  CHECK(LaplaceProb(W("0101"), 0).linear() == doctest::Approx(1.0 / 30).epsilon(1e-12));
  CHECK(LaplaceProb(W("0101"), 0).log2() == doctest::Approx(-std::log2(30.0)).epsilon(1e-12));
  CHECK(LaplaceProb(W(""), 3).linear() == 1.0);
  CHECK(LaplaceProb(W("0101"), 5).linear() == doctest::Approx(1.0 / 16));
  CHECK(LaplaceCond(W("01010"), 0, 0) == doctest::Approx(4.0 / 7).epsilon(1e-12));
  CHECK(LaplaceCond(W("01010"), 1, 0) == doctest::Approx(3.0 / 7).epsilon(1e-12));
  CHECK(LaplaceCond(W(""), 0, 0) == doctest::Approx(0.5));
}

TEST_CASE("Krichevsky measure") {
  CHECK(KtProb(W("01010"), 0).linear() == doctest::Approx(3.0 / 256).epsilon(1e-12));
  const auto oi = Alphabet::FromChars("OI");
  const auto x = Sequence::FromString(oi, "OOIOIIOOIIIOIO");
  const double expect = 0.25 * (0.5 * 0.75) * (0.5 * 0.25 * 0.5 * 0.375) * (0.5 * 0.25 * 0.5) *
                        (0.5 * 0.25 * 0.5);
  CHECK(KtProb(x, 2).linear() == doctest::Approx(expect).epsilon(1e-10));
  CHECK(expect == doctest::Approx(8.583e-6).epsilon(1e-3));
  CHECK(KtCond(W("01010"), 0, 0) == doctest::Approx(7.0 / 12).epsilon(1e-12));
  CHECK(KtCond(W("01010"), 1, 0) == doctest::Approx(5.0 / 12).epsilon(1e-12));
  CHECK(KtCond(W(""), 1, 0) == doctest::Approx(0.5));
  CHECK(KtProb(W("00"), 0).linear() == doctest::Approx(3.0 / 8));
  CHECK(KtProb(W("01"), 0).linear() == doctest::Approx(1.0 / 8));
}

TEST_CASE("Krichevsky measure of a multi-sample") {
  const auto ms = MS({"0101", "101"});
  CHECK(KtProb(ms, 0).linear() == doctest::Approx(0.00244).epsilon(2e-3));
  CHECK(KtProb(ms, 1).linear() == doctest::Approx(0.0293).epsilon(2e-3));
  CHECK(KtProb(ms, 2).linear() == doctest::Approx(0.01172).epsilon(1e-3));
  for (std::size_t m = 3; m < 7; ++m) CHECK(KtProb(ms, m).log2() == -7.0);
}

TEST_CASE("mixture measure R") {
  CHECK(RProb(W("00")).prob.linear() == doctest::Approx(0.296).epsilon(0.003));
  CHECK(RProb(W("01")).prob.linear() == doctest::Approx(0.204).epsilon(0.004));
  CHECK(RProb(MS({"0101", "101"})).prob.linear() == doctest::Approx(0.0089).epsilon(0.03));
  CHECK(RProb(MS({"0101", "101", "01"})).prob.linear() == doctest::Approx(0.00292).epsilon(0.03));
  CHECK(RCond(MS({"0101", "101"}), W("01")) == doctest::Approx(0.328).epsilon(0.01));
  CHECK(RProb(W("")).prob.linear() == 1.0);
  CHECK(RCond(MS({""}), W("0")) == doctest::Approx(0.5));
  CHECK_FALSE(RProb(W("0101")).approximate);
}

TEST_CASE("capped mixture order is flagged approximate") {
  const auto x = W("0110101101011010");
  auto capped = RProb(MultiSample(x), OmegaWeights{}, 2);
  CHECK(capped.approximate);
  auto full = RProb(MultiSample(x));
  CHECK(capped.prob.log2() != doctest::Approx(full.prob.log2()));
}

TEST_CASE("measure names parse") {
  CHECK(MeasureSpec::Parse("L2").kind == MeasureSpec::Kind::kLaplace);
  CHECK(MeasureSpec::Parse("L2").order == 2);
  CHECK(MeasureSpec::Parse("K0").kind == MeasureSpec::Kind::kKrichevsky);
  CHECK(MeasureSpec::Parse("R").kind == MeasureSpec::Kind::kMixture);
  CHECK(MeasureSpec::Parse("K12").to_string() == "K12");
  CHECK_THROWS(MeasureSpec::Parse("Q"));
  CHECK_THROWS(MeasureSpec::Parse("K"));
}

TEST_CASE("additivity and positivity over all binary words up to length 6") {
  const std::vector<MeasureSpec> specs{MeasureSpec::Laplace(0), MeasureSpec::Laplace(2),
                                       MeasureSpec::Krichevsky(0), MeasureSpec::Krichevsky(2),
                                       MeasureSpec::Mixture()};
  for (const auto& spec : specs) {
    MarkovMeasure mu(spec, 2);
    for (std::size_t len = 0; len <= 6; ++len) {
      for (unsigned bits = 0; bits < (1u << len); ++bits) {
        const auto x = FromBits(bits, len);
        const double px = mu.Prob(x).linear();
        CHECK(px > 0.0);
        const double sum = mu.Prob(x.appended(0)).linear() + mu.Prob(x.appended(1)).linear();
        CHECK(sum == doctest::Approx(px).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("incremental engine agrees with the Gamma closed form") {
  std::mt19937_64 rng(11);
  for (std::size_t a : {2u, 3u, 5u}) {
    for (std::size_t len : {0u, 1u, 7u, 300u, 10000u}) {
      std::vector<Symbol> d(len);
      for (auto& s : d) s = Symbol(rng() % a);
      const MultiSample ms(Sequence(Alphabet::OfSize(a), d));
      for (std::size_t m : {0u, 1u, 2u, 4u}) {
        MarkovMeasure kt(MeasureSpec::Krichevsky(m), a);
        MarkovMeasure lp(MeasureSpec::Laplace(m), a);
        CHECK(kt.Prob(ms).log2() == doctest::Approx(Log2GammaForm(ms, m, 0.5)).epsilon(1e-12));
        CHECK(lp.Prob(ms).log2() == doctest::Approx(Log2GammaForm(ms, m, 1.0)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("engine agrees with direct sums on multi-samples") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Sequence> parts;
    const int r = 1 + int(rng() % 4);
    for (int k = 0; k < r; ++k) {
      std::vector<Symbol> d(rng() % 12);
      for (auto& s : d) s = Symbol(rng() % 2);
      parts.emplace_back(B(), d);
    }
    const auto ms = DiamondConcat(parts);
    // Direct evaluation of the mixture with the closed-form tail.
    OmegaWeights w;
    const std::size_t big = ms.max_sample_length();
    std::vector<double> terms;
    for (std::size_t i = 0; i < big; ++i) terms.push_back(w.log2_weight(i + 1) + Log2GammaForm(ms, i, 0.5));
    terms.push_back(w.log2_tail(big + 1) - double(ms.total_length()));
    CHECK(RProb(ms).prob.log2() == doctest::Approx(LogSumExp2(terms)).epsilon(1e-12));
  }
}

TEST_CASE("single-sample and multi-sample paths agree") {
  const auto x = W("0110100110");
  MarkovMeasure r(MeasureSpec::Mixture(), 2);
  CHECK(r.Prob(x).log2() == doctest::Approx(RProb(DiamondConcat({x})).prob.log2()).epsilon(1e-12));
}

TEST_CASE("next-symbol distributions are conditionals") {
  MarkovMeasure r(MeasureSpec::Mixture(), 2);
  const auto ms = MS({"0101", "1011"});
  const auto next = r.Next(ms);
  CHECK(next.sum() == doctest::Approx(1.0).epsilon(1e-12));
  for (Symbol a : {0u, 1u}) {
    const double ratio = std::exp2(r.Prob(ms.extended(a)).log2() - r.Prob(ms).log2());
    CHECK(next[a] == doctest::Approx(ratio).epsilon(1e-12));
  }
  MarkovMeasure k0(MeasureSpec::Krichevsky(0), 2);
  const auto n0 = k0.Next(W("01010"));
  CHECK(n0[0] == doctest::Approx(7.0 / 12));
  CHECK(n0[1] == doctest::Approx(5.0 / 12));
}

TEST_CASE("conditional of a short final sample uses the uniform phase") {
  // Order-2 conditional with only one symbol in the final sample.
  const auto ms = MS({"0011", "1"});
  for (Symbol a : {0u, 1u}) CHECK(KtCond(ms, a, 2) == doctest::Approx(0.5));
}

TEST_CASE("predictor rejects symbols outside the alphabet") {
  MarkovMeasure r(MeasureSpec::Mixture(), 2);
  auto p = r.Start();
  CHECK_THROWS(p->Update(2));
}
