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

// Synthetic processes, CSV ingestion, the inertial baseline and the
// benchmark loop that compares them with density-based prediction.

#ifndef ZEST_HARNESS_HPP_
#define ZEST_HARNESS_HPP_

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "zest/alphabet.hpp"
#include "zest/coding.hpp"
#include "zest/context_mixture.hpp"

namespace zest {

// f(i) = floor(amplitude * sin(pi * i / divisor + phase_pi * pi)).
struct MixtureComponent {
  double amplitude = 1.0;
  double divisor = 1.0;
  double phase_pi = 0.0;

  double operator()(long i) const;
  // "amplitude:divisor:phase_pi", e.g. "7:5:0.2".
  static MixtureComponent Parse(const std::string& text);
};

struct ProcessSpec {
  enum class Kind { kSine, kFourMixture, kBernoulli, kMarkov, kCsv };

  Kind kind = Kind::kSine;
  std::uint64_t seed = 0;

  // x_i = sin(pi (i + phase) / divisor), i = 1..n
  double sine_divisor = 23.0;
  long sine_phase = 0;

  // Segment lengths are Poisson(lambda) + 1; each segment uses one of the
  // components chosen uniformly, evaluated at the global index i.
  double poisson_lambda = 0.1;
  std::array<MixtureComponent, 4> components = {
      MixtureComponent{5, 16, 0}, MixtureComponent{7, 5, 0.2}, MixtureComponent{8, 3, 0},
      MixtureComponent{8, 23, 0}};

  double bernoulli_p = 0.5;
  Eigen::MatrixXd transition;

  std::string csv_path;
  std::string csv_column = "0";

  // "sine", "mixture", "bernoulli:0.2", "markov:0.9,0.1;0.2,0.8", "csv:path[:column]".
  static ProcessSpec Parse(const std::string& text);
  std::string name() const;
  bool symbolic() const { return kind == Kind::kBernoulli || kind == Kind::kMarkov; }
};

struct MixtureSeries {
  std::vector<double> values;
  std::vector<int> segment_functions;  // 0..3, one per segment
};

MixtureSeries GenerateMixture(const ProcessSpec& spec, std::size_t n, std::mt19937_64& rng);

// Real-valued series of length n; deterministic in spec.seed.
std::vector<double> GenerateSeries(const ProcessSpec& spec, std::size_t n);
// Symbol sequence for Bernoulli and Markov processes.
Sequence GenerateSymbols(const ProcessSpec& spec, std::size_t n);

struct CsvSeries {
  std::vector<double> values;
  double min = 0.0;
  double max = 0.0;
  bool had_header = false;
};

// `column` is a 0-based index or a header name. A non-numeric first row is
// treated as a header. Throws DataError with the offending line number.
CsvSeries IngestCsv(const std::string& path, const std::string& column = "0");

// x* = x_n.
double InertialPredict(std::span<const double> series);

struct PredictorConfig {
  enum class Backend { kDensity, kSymbolicMean, kSymbolicArgmax };
  Backend backend = Backend::kDensity;
  std::size_t levels = 8;
  std::size_t max_order = ContextMixture::kUnbounded;
  // Null selects the R measure at every level.
  std::shared_ptr<const Compressor> code;
  std::size_t threads = 0;  // 0: hardware concurrency

  std::string describe() const;
};

// Maps the history affinely onto [0, 1], predicts the next value there and
// maps the prediction back.
double PredictNext(std::span<const double> history, const PredictorConfig& config);

struct BenchmarkRun {
  std::size_t run = 0;
  std::size_t n = 0;
  double actual = 0.0;
  double suggested = 0.0;
  double inertial = 0.0;
  double error_suggested() const { return std::abs(suggested - actual); }
  double error_inertial() const { return std::abs(inertial - actual); }
};

struct BenchmarkRow {
  std::size_t runs = 0;
  std::size_t n = 0;
  double mean_error_suggested = 0.0;
  double mean_error_inertial = 0.0;
  // Reference figures for this process and n, when known.
  std::optional<double> reference_suggested;
  std::optional<double> reference_inertial;
};

struct BenchmarkReport {
  std::string process;
  std::string predictor;
  std::uint64_t seed = 0;
  std::vector<BenchmarkRow> rows;
  std::vector<BenchmarkRun> runs;

  void WriteCsv(std::ostream& out) const;
  void WriteJson(std::ostream& out) const;
  void WriteMarkdown(std::ostream& out) const;
};

// For every n, `runs` independent experiments: draw n + 1 values with a fresh
// seed, predict the last from the first n, and record both errors.
BenchmarkReport RunBenchmark(const ProcessSpec& spec, const PredictorConfig& config,
                             std::size_t runs, std::span<const std::size_t> ns);

}  // namespace zest

#endif  // ZEST_HARNESS_HPP_
