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

#include "zest/prediction.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "zest/log_prob.hpp"

namespace zest {

void PredictionTrace::WriteJsonLines(std::ostream& out) const {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    nlohmann::json line;
    line["step"] = i + 1;
    line["distribution"] = std::vector<double>(s.predicted.begin(), s.predicted.end());
    line["realized"] = s.realized;
    if (std::isinf(s.logloss)) {
      line["logloss"] = "inf";
    } else {
      line["logloss"] = s.logloss;
    }
    out << line.dump() << '\n';
  }
}

void PredictionTrace::WriteSummaryCsv(std::ostream& out) const {
  out << "steps,total_logloss,cesaro_average,infinite_loss\n";
  out << steps.size() << ',' << total_logloss << ',' << cesaro_average() << ','
      << (infinite_loss ? "true" : "false") << '\n';
}

PredictionTrace OnlinePredict(const SequenceMeasure& measure, const Sequence& x,
                              const std::optional<MultiSample>& priming) {
  if (x.alphabet()->size() != measure.alphabet_size()) {
    throw std::invalid_argument("sequence alphabet does not match predictor");
  }
  auto predictor = measure.Start();
  if (priming) {
    if (priming->alphabet()->size() != measure.alphabet_size()) {
      throw std::invalid_argument("priming alphabet does not match predictor");
    }
    for (std::size_t i = 0; i < priming->sample_count(); ++i) {
      if (i > 0) predictor->BeginSample();
      for (Symbol a : priming->samples()[i].data()) predictor->Update(a);
    }
    predictor->BeginSample();
  }
  PredictionTrace trace;
  trace.steps.reserve(x.size());
  for (Symbol a : x.data()) {
    PredictionStep step;
    step.predicted = predictor->Predict();
    step.realized = a;
    const double p = step.predicted[a];
    step.logloss = p > 0.0 ? -std::log2(p) : std::numeric_limits<double>::infinity();
    trace.infinite_loss = trace.infinite_loss || p <= 0.0;
    trace.total_logloss += step.logloss;
    trace.steps.push_back(std::move(step));
    predictor->Update(a);
  }
  return trace;
}

Distribution SideInfoFromJoint(const Distribution& joint_next, const ProductAlphabet& alphabet,
                               Symbol y) {
  if (std::size_t(joint_next.size()) != alphabet.size()) {
    throw std::invalid_argument("joint distribution does not match product alphabet");
  }
  if (y >= alphabet.y_size) throw std::out_of_range("side symbol outside Y");
  Distribution out(Eigen::Index(alphabet.x_size));
  for (Symbol x = 0; x < alphabet.x_size; ++x) out[x] = joint_next[alphabet.Pair(x, y)];
  return out / out.sum();
}

Distribution SideInfoPredict(const SequenceMeasure& joint, const ProductAlphabet& alphabet,
                             std::span<const std::pair<Symbol, Symbol>> history, Symbol y) {
  if (joint.alphabet_size() != alphabet.size()) {
    throw std::invalid_argument("joint measure must be over the product alphabet");
  }
  auto predictor = joint.Start();
  for (const auto& [x, y_past] : history) {
    if (x >= alphabet.x_size || y_past >= alphabet.y_size) {
      throw std::out_of_range("history pair outside X x Y");
    }
    predictor->Update(alphabet.Pair(x, y_past));
  }
  return SideInfoFromJoint(predictor->Predict(), alphabet, y);
}

namespace {

std::mt19937_64 RunRng(std::uint64_t seed, std::size_t run) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(run),
                    std::uint32_t(std::uint64_t(run) >> 32)};
  return std::mt19937_64(seq);
}

Estimate Summarise(const std::vector<double>& values) {
  Estimate e;
  if (values.empty()) return e;
  for (double v : values) e.mean += v;
  e.mean /= double(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(ss / double(values.size() - 1) / double(values.size()));
  }
  return e;
}

}  // namespace

std::vector<CesaroPoint> CesaroErrorCurve(const Source& truth, const SequenceMeasure& predictor,
                                          std::span<const std::size_t> checkpoints,
                                          std::size_t runs, std::uint64_t seed) {
  if (truth.alphabet_size() != predictor.alphabet_size()) {
    throw std::invalid_argument("source and predictor alphabets differ");
  }
  if (checkpoints.empty() || runs == 0) return {};
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw std::invalid_argument("checkpoints must be positive and increasing");
    }
  }
  const std::size_t t_max = checkpoints.back();
  std::vector<std::vector<double>> samples(checkpoints.size());
  for (std::size_t r = 0; r < runs; ++r) {
    auto rng = RunRng(seed, r);
    const auto x = truth.Sample(t_max, rng);
    auto online = predictor.Start();
    double log_p = 0.0;
    double log_gamma = 0.0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < t_max; ++i) {
      const Symbol a = x[i];
      log_p += std::log2(truth.Conditional(x.data().first(i))[a]);
      log_gamma += std::log2(online->Predict()[a]);
      online->Update(a);
      if (i + 1 == checkpoints[next]) {
        samples[next].push_back((log_p - log_gamma) / double(i + 1));
        ++next;
      }
    }
  }
  std::vector<CesaroPoint> curve;
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    const auto e = Summarise(samples[k]);
    curve.push_back({checkpoints[k], e.mean, e.std_error});
  }
  return curve;
}

double CesaroErrorExact(const Source& truth, const SequenceMeasure& predictor, std::size_t t) {
  if (t == 0 || t > 20) throw std::invalid_argument("exhaustive Cesaro error needs 1 <= t <= 20");
  const std::size_t k = truth.alphabet_size();
  const auto alphabet = Alphabet::OfSize(k);
  std::vector<Symbol> word(t, 0);
  double sum = 0.0;
  for (;;) {
    const double log_p = truth.Log2Prob(word);
    if (std::isfinite(log_p)) {
      const double log_gamma = predictor.Prob(Sequence(alphabet, word)).log2();
      sum += std::exp2(log_p) * (log_p - log_gamma);
    }
    std::size_t i = t;
    while (i > 0 && word[i - 1] + 1 == k) word[--i] = 0;
    if (i == 0) break;
    ++word[i - 1];
  }
  return sum / double(t);
}

Estimate ExpectedStepKl(const Source& truth, const SequenceMeasure& predictor, std::size_t t,
                        std::size_t runs, std::uint64_t seed) {
  std::vector<double> values;
  values.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    auto rng = RunRng(seed, r);
    const auto x = truth.Sample(t, rng);
    auto online = predictor.Start();
    for (Symbol a : x.data()) online->Update(a);
    values.push_back(KlDivergence(truth.Conditional(x.data()), online->Predict()));
  }
  return Summarise(values);
}

}  // namespace zest
