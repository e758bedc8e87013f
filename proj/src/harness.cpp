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

#include "zest/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "zest/errors.hpp"
#include "zest/measures.hpp"
#include "zest/real_valued.hpp"
#include "zest/sources.hpp"

namespace zest {

namespace {

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::optional<double> ParseNumber(const std::string& text) {
  const auto t = Trim(text);
  if (t.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

double ParseDouble(const std::string& text, const std::string& what) {
  auto v = ParseNumber(text);
  if (!v) throw std::invalid_argument("invalid " + what + " '" + text + "'");
  return *v;
}

std::mt19937_64 SeededRng(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(a),
                    std::uint32_t(a >> 32), std::uint32_t(b), std::uint32_t(b >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> SineSeries(const ProcessSpec& spec, long phase, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 1; i <= n; ++i) {
    x[i - 1] = std::sin(std::numbers::pi * double(long(i) + phase) / spec.sine_divisor);
  }
  return x;
}

std::unique_ptr<Source> SymbolSource(const ProcessSpec& spec) {
  if (spec.kind == ProcessSpec::Kind::kBernoulli) {
    return std::make_unique<IidSource>(IidSource::Bernoulli(spec.bernoulli_p));
  }
  if (spec.kind == ProcessSpec::Kind::kMarkov) return std::make_unique<MarkovSource>(spec.transition);
  throw std::invalid_argument("process " + spec.name() + " does not generate symbols");
}

}  // namespace

double MixtureComponent::operator()(long i) const {
  return std::floor(amplitude *
                    std::sin(std::numbers::pi * double(i) / divisor + phase_pi * std::numbers::pi));
}

MixtureComponent MixtureComponent::Parse(const std::string& text) {
  auto parts = Split(text, ':');
  if (parts.size() != 3) {
    throw std::invalid_argument("mixture component must be amplitude:divisor:phase, got '" + text + "'");
  }
  MixtureComponent c{ParseDouble(parts[0], "amplitude"), ParseDouble(parts[1], "divisor"),
                     ParseDouble(parts[2], "phase")};
  if (c.divisor == 0.0) throw std::invalid_argument("mixture divisor must be nonzero");
  return c;
}

ProcessSpec ProcessSpec::Parse(const std::string& text) {
  ProcessSpec spec;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "sine") {
    spec.kind = Kind::kSine;
    if (!rest.empty()) spec.sine_divisor = ParseDouble(rest, "sine divisor");
  } else if (head == "mixture") {
    spec.kind = Kind::kFourMixture;
    if (!rest.empty()) spec.poisson_lambda = ParseDouble(rest, "Poisson lambda");
  } else if (head == "bernoulli") {
    spec.kind = Kind::kBernoulli;
    spec.bernoulli_p = ParseDouble(rest, "Bernoulli p");
    if (spec.bernoulli_p < 0.0 || spec.bernoulli_p > 1.0) {
      throw std::invalid_argument("Bernoulli p must lie in [0, 1]");
    }
  } else if (head == "markov") {
    spec.kind = Kind::kMarkov;
    auto rows = Split(rest, ';');
    const auto k = Eigen::Index(rows.size());
    spec.transition.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      auto cols = Split(rows[std::size_t(i)], ',');
      if (Eigen::Index(cols.size()) != k) throw std::invalid_argument("transition matrix must be square");
      for (Eigen::Index j = 0; j < k; ++j) {
        spec.transition(i, j) = ParseDouble(cols[std::size_t(j)], "transition entry");
      }
    }
    MarkovSource check(spec.transition);
  } else if (head == "csv") {
    spec.kind = Kind::kCsv;
    // csv:path or csv:path:column
    const auto last = rest.rfind(':');
    if (last != std::string::npos && last > 0) {
      spec.csv_path = rest.substr(0, last);
      spec.csv_column = rest.substr(last + 1);
    } else {
      spec.csv_path = rest;
    }
    if (spec.csv_path.empty()) throw std::invalid_argument("csv process needs a path");
  } else {
    throw std::invalid_argument("unknown process '" + text + "'");
  }
  return spec;
}

std::string ProcessSpec::name() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kSine:
      out << "sine:" << sine_divisor;
      break;
    case Kind::kFourMixture:
      out << "mixture:" << poisson_lambda;
      break;
    case Kind::kBernoulli:
      out << "bernoulli:" << bernoulli_p;
      break;
    case Kind::kMarkov:
      out << "markov";
      break;
    case Kind::kCsv:
      out << "csv:" << csv_path << ':' << csv_column;
      break;
  }
  return out.str();
}

MixtureSeries GenerateMixture(const ProcessSpec& spec, std::size_t n, std::mt19937_64& rng) {
  if (!(spec.poisson_lambda >= 0.0)) throw std::invalid_argument("Poisson lambda must be >= 0");
  MixtureSeries out;
  out.values.reserve(n);
  std::poisson_distribution<long> length(spec.poisson_lambda);
  std::uniform_int_distribution<int> which(0, 3);
  long i = 1;
  while (out.values.size() < n) {
    const long len = (spec.poisson_lambda > 0.0 ? length(rng) : 0) + 1;
    const int f = which(rng);
    out.segment_functions.push_back(f);
    for (long j = 0; j < len && out.values.size() < n; ++j, ++i) {
      out.values.push_back(spec.components[std::size_t(f)](i));
    }
  }
  return out;
}

std::vector<double> GenerateSeries(const ProcessSpec& spec, std::size_t n) {
  switch (spec.kind) {
    case ProcessSpec::Kind::kSine:
      return SineSeries(spec, spec.sine_phase, n);
    case ProcessSpec::Kind::kFourMixture: {
      auto rng = SeededRng(spec.seed);
      return GenerateMixture(spec, n, rng).values;
    }
    case ProcessSpec::Kind::kBernoulli:
    case ProcessSpec::Kind::kMarkov: {
      const auto x = GenerateSymbols(spec, n);
      return std::vector<double>(x.data().begin(), x.data().end());
    }
    case ProcessSpec::Kind::kCsv: {
      auto csv = IngestCsv(spec.csv_path, spec.csv_column);
      if (csv.values.size() < n) {
        throw DataError("csv column has " + std::to_string(csv.values.size()) +
                        " values, fewer than " + std::to_string(n));
      }
      csv.values.resize(n);
      return csv.values;
    }
  }
  throw std::logic_error("unhandled process kind");
}

Sequence GenerateSymbols(const ProcessSpec& spec, std::size_t n) {
  auto source = SymbolSource(spec);
  auto rng = SeededRng(spec.seed);
  return source->Sample(n, rng);
}

CsvSeries IngestCsv(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  const bool by_index = !column.empty() && std::all_of(column.begin(), column.end(), ::isdigit);
  std::size_t col = by_index ? std::stoul(column) : 0;
  bool resolved = by_index;

  CsvSeries out;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto fields = Split(line, ',');
    if (first) {
      first = false;
      if (!resolved) {
        auto it = std::find_if(fields.begin(), fields.end(),
                               [&](const std::string& f) { return Trim(f) == column; });
        if (it == fields.end()) throw DataError("column '" + column + "' not found in header of " + path);
        col = std::size_t(it - fields.begin());
        resolved = true;
        out.had_header = true;
        continue;
      }
      if (col < fields.size() && !ParseNumber(fields[col])) {
        out.had_header = true;
        continue;
      }
    }
    if (col >= fields.size()) {
      throw DataError(path + ":" + std::to_string(line_no) + ": column '" + column + "' missing");
    }
    auto v = ParseNumber(fields[col]);
    if (!v) {
      throw DataError(path + ":" + std::to_string(line_no) + ": cannot parse '" + Trim(fields[col]) +
                      "' as a number");
    }
    out.values.push_back(*v);
  }
  if (out.values.empty()) throw DataError("no numeric values in column '" + column + "' of " + path);
  auto [lo, hi] = std::minmax_element(out.values.begin(), out.values.end());
  out.min = *lo;
  out.max = *hi;
  return out;
}

double InertialPredict(std::span<const double> series) {
  if (series.empty()) throw std::invalid_argument("inertial prediction needs a nonempty series");
  return series.back();
}

std::string PredictorConfig::describe() const {
  std::ostringstream out;
  switch (backend) {
    case Backend::kDensity:
      out << "density";
      break;
    case Backend::kSymbolicMean:
      out << "symbolic-mean";
      break;
    case Backend::kSymbolicArgmax:
      out << "symbolic-argmax";
      break;
  }
  out << " levels=" << levels << " measure=" << (code ? "code:" + code->name() : std::string("R"));
  if (max_order != ContextMixture::kUnbounded) out << " max_order=" << max_order;
  return out.str();
}

double PredictNext(std::span<const double> history, const PredictorConfig& config) {
  if (history.empty()) throw std::invalid_argument("prediction needs a nonempty history");
  auto [lo_it, hi_it] = std::minmax_element(history.begin(), history.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (hi - lo <= 0.0) {
    lo -= 0.5;
    hi += 0.5;
  }
  std::vector<double> mapped(history.size());
  for (std::size_t i = 0; i < history.size(); ++i) mapped[i] = (history[i] - lo) / (hi - lo);

  LevelMeasureFactory levels = config.code ? CodeLevels(config.code)
                                           : MixtureLevels(OmegaWeights{}, config.max_order);
  const PartitionScheme scheme(0.0, 1.0, config.levels, /*clamp=*/true);
  double unit = 0.0;
  if (config.backend == PredictorConfig::Backend::kDensity) {
    unit = DensityEstimator(scheme, levels).PredictMean(mapped);
  } else {
    const std::size_t s = config.levels;
    const auto measure = levels(scheme.cells(s));
    auto predictor = measure->Start();
    for (Symbol c : QuantizeSeries(scheme, mapped, s).cells) predictor->Update(c);
    const auto p = predictor->Predict();
    if (config.backend == PredictorConfig::Backend::kSymbolicArgmax) {
      Eigen::Index best = 0;
      p.maxCoeff(&best);
      unit = scheme.cell_mid(s, Symbol(best));
    } else {
      for (Eigen::Index c = 0; c < p.size(); ++c) unit += p[c] * scheme.cell_mid(s, Symbol(c));
    }
  }
  return lo + unit * (hi - lo);
}

namespace {

std::optional<std::pair<double, double>> ReferenceFigures(const ProcessSpec& spec, std::size_t n) {
  // Figures measured with a general-purpose archiver as the code.
  if (spec.kind == ProcessSpec::Kind::kSine && spec.sine_divisor == 23.0) {
    if (n == 1000) return std::pair{0.37, 0.41};
    if (n == 2000) return std::pair{0.37, 0.46};
    if (n == 3000) return std::pair{0.34, 0.45};
  }
  if (spec.kind == ProcessSpec::Kind::kFourMixture) {
    if (n == 2000) return std::pair{1.43, 2.2};
    if (n == 5000) return std::pair{2.97, 4.27};
    if (n == 10000) return std::pair{3.07, 3.4};
  }
  return std::nullopt;
}

std::vector<double> RunSeries(const ProcessSpec& spec, std::size_t length, std::mt19937_64& rng,
                              const std::vector<double>& csv) {
  switch (spec.kind) {
    case ProcessSpec::Kind::kSine: {
      // A fresh seed shifts the phase.
      const long period = long(std::ceil(2.0 * spec.sine_divisor));
      std::uniform_int_distribution<long> phase(0, std::max(period - 1, 0L));
      return SineSeries(spec, phase(rng), length);
    }
    case ProcessSpec::Kind::kFourMixture:
      return GenerateMixture(spec, length, rng).values;
    case ProcessSpec::Kind::kBernoulli:
    case ProcessSpec::Kind::kMarkov: {
      const auto x = SymbolSource(spec)->Sample(length, rng);
      return std::vector<double>(x.data().begin(), x.data().end());
    }
    case ProcessSpec::Kind::kCsv: {
      if (csv.size() < length) {
        throw DataError("csv series too short for n = " + std::to_string(length - 1));
      }
      std::uniform_int_distribution<std::size_t> start(0, csv.size() - length);
      const auto s = start(rng);
      return std::vector<double>(csv.begin() + long(s), csv.begin() + long(s + length));
    }
  }
  throw std::logic_error("unhandled process kind");
}

}  // namespace

BenchmarkReport RunBenchmark(const ProcessSpec& spec, const PredictorConfig& config,
                             std::size_t runs, std::span<const std::size_t> ns) {
  if (runs == 0) throw std::invalid_argument("benchmark needs at least one run");
  std::vector<double> csv;
  if (spec.kind == ProcessSpec::Kind::kCsv) csv = IngestCsv(spec.csv_path, spec.csv_column).values;

  struct Job {
    std::size_t n;
    std::size_t run;
  };
  std::vector<Job> jobs;
  for (std::size_t n : ns) {
    if (n == 0) throw std::invalid_argument("sample length n must be positive");
    for (std::size_t r = 0; r < runs; ++r) jobs.push_back({n, r});
  }
  std::vector<BenchmarkRun> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        const auto [n, r] = jobs[j];
        auto rng = SeededRng(spec.seed, n, r);
        const auto series = RunSeries(spec, n + 1, rng, csv);
        const std::span<const double> history(series.data(), n);
        results[j] = {r, n, series[n], PredictNext(history, config), InertialPredict(history)};
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  std::size_t threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(jobs.size(), 1));
  if (config.code) threads = 1;  // external programs are run one at a time anyway
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  BenchmarkReport report;
  report.process = spec.name();
  report.predictor = config.describe();
  report.seed = spec.seed;
  report.runs = results;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    BenchmarkRow row;
    row.runs = runs;
    row.n = ns[k];
    double sum_s = 0.0;
    double sum_i = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
      sum_s += results[k * runs + r].error_suggested();
      sum_i += results[k * runs + r].error_inertial();
    }
    row.mean_error_suggested = sum_s / double(runs);
    row.mean_error_inertial = sum_i / double(runs);
    if (auto ref = ReferenceFigures(spec, row.n)) {
      row.reference_suggested = ref->first;
      row.reference_inertial = ref->second;
    }
    report.rows.push_back(row);
  }
  return report;
}

namespace {

std::string Optional(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream out;
  out << *v;
  return out.str();
}

}  // namespace

void BenchmarkReport::WriteCsv(std::ostream& out) const {
  out << std::setprecision(10);
  out << "runs,n,mean_error_suggested,mean_error_inertial,reference_suggested,reference_inertial\n";
  for (const auto& r : rows) {
    out << r.runs << ',' << r.n << ',' << r.mean_error_suggested << ',' << r.mean_error_inertial
        << ',' << Optional(r.reference_suggested) << ',' << Optional(r.reference_inertial) << '\n';
  }
}

void BenchmarkReport::WriteJson(std::ostream& out) const {
  nlohmann::json j;
  j["process"] = process;
  j["predictor"] = predictor;
  j["seed"] = seed;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"runs", r.runs},
                       {"n", r.n},
                       {"mean_error_suggested", r.mean_error_suggested},
                       {"mean_error_inertial", r.mean_error_inertial}};
    if (r.reference_suggested) row["reference_suggested"] = *r.reference_suggested;
    if (r.reference_inertial) row["reference_inertial"] = *r.reference_inertial;
    j["rows"].push_back(row);
  }
  j["runs"] = nlohmann::json::array();
  for (const auto& r : runs) {
    j["runs"].push_back({{"run", r.run},
                         {"n", r.n},
                         {"actual", r.actual},
                         {"suggested", r.suggested},
                         {"inertial", r.inertial}});
  }
  out << j.dump(2) << '\n';
}

void BenchmarkReport::WriteMarkdown(std::ostream& out) const {
  out << "Process: " << process << "  \nPredictor: " << predictor << "  \nSeed: " << seed << "\n\n";
  out << "| Number of experiments | n | Suggested | Inertial | Reference suggested | Reference inertial |\n";
  out << "|---|---|---|---|---|---|\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& r : rows) {
    out << "| " << r.runs << " | " << r.n << " | " << r.mean_error_suggested << " | "
        << r.mean_error_inertial << " | " << Optional(r.reference_suggested) << " | "
        << Optional(r.reference_inertial) << " |\n";
  }
}

}  // namespace zest
