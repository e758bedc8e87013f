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

// Command-line front end: estimate, predict, density, simulate, bench.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <unistd.h>
#include <sstream>

#include "CLI11.hpp"
#include "zest/coding.hpp"
#include "zest/errors.hpp"
#include "zest/harness.hpp"
#include "zest/measures.hpp"
#include "zest/prediction.hpp"
#include "zest/real_valued.hpp"

using namespace zest;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kData = 3, kCompressor = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string ReadInput(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Parse errors in user data are data errors, not usage errors.
template <typename F>
auto AsData(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

struct InputOptions {
  std::string alphabet;
  bool tokens = false;
};

AlphabetPtr DeclaredAlphabet(const InputOptions& in) {
  if (in.alphabet.empty()) return nullptr;
  if (in.tokens) {
    std::vector<std::string> toks;
    std::stringstream ss(in.alphabet);
    for (std::string t; std::getline(ss, t, ',');) toks.push_back(t);
    return std::make_shared<Alphabet>(toks);
  }
  return Alphabet::FromChars(in.alphabet);
}

MultiSample LoadSamples(const std::string& path, const InputOptions& in, AlphabetPtr alphabet = nullptr) {
  const auto text = ReadInput(path);
  if (!alphabet) alphabet = DeclaredAlphabet(in);
  return AsData([&] {
    return in.tokens ? ParseTokenSamples(text, alphabet) : ParseMultiSample(text, alphabet);
  });
}

struct MeasureOptions {
  std::string measure = "R";
  int order = -1;
  std::size_t max_order = ContextMixture::kUnbounded;
  std::string compressor;
};

std::shared_ptr<const Compressor> MakeCode(const MeasureOptions& m) {
  if (m.compressor.empty() || m.compressor == "builtin") {
    BuiltinCode::Options opts;
    opts.max_order = m.max_order;
    return std::make_shared<BuiltinCode>(opts);
  }
  return MakeExternalCompressor(m.compressor);
}

std::shared_ptr<const SequenceMeasure> MakeMeasure(const MeasureOptions& m, const AlphabetPtr& alphabet,
                                                   CodeMeasure::Normalization mode) {
  if (m.measure == "code") return std::make_shared<CodeMeasure>(MakeCode(m), alphabet, mode);
  std::string text = m.measure;
  if (m.order >= 0 && (text == "L" || text == "K")) text += std::to_string(m.order);
  MeasureSpec spec;
  try {
    spec = MeasureSpec::Parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return std::make_shared<MarkovMeasure>(spec, alphabet->size(), OmegaWeights{}, m.max_order);
}

void AddInputFlags(CLI::App* app, InputOptions& in) {
  app->add_option("--alphabet", in.alphabet,
                  "Symbols in index order (characters, or comma-separated with --tokens)");
  app->add_flag("--tokens", in.tokens, "Symbols are comma or newline separated tokens");
}

void AddMeasureFlags(CLI::App* app, MeasureOptions& m) {
  app->add_option("--measure", m.measure, "R, L<m>, K<m>, L, K (with --order) or code")
      ->capture_default_str();
  app->add_option("--order", m.order, "Markov order for L and K");
  app->add_option("--max-order", m.max_order, "Cap on the mixture order (approximate above it)");
  app->add_option("--compressor", m.compressor,
                  "External compressor command ({in}/{out} template or stdin/stdout), or builtin");
}

std::string Format(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

json DistributionJson(const Distribution& p, const Alphabet& a) {
  json j = json::object();
  for (Eigen::Index i = 0; i < p.size(); ++i) j[a.token(Symbol(i))] = p[i];
  return j;
}

void PrintDistribution(const Distribution& p, const Alphabet& a, const std::string& format) {
  if (format == "json") {
    std::cout << DistributionJson(p, a).dump() << '\n';
    return;
  }
  if (format == "csv") std::cout << "symbol,probability\n";
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    std::cout << a.token(Symbol(i)) << (format == "csv" ? "," : "\t") << Format(p[i]) << '\n';
  }
}

// estimate ---------------------------------------------------------------

struct EstimateArgs {
  std::string input = "-";
  InputOptions in;
  MeasureOptions m;
  std::string format = "text";
};

int RunEstimate(const EstimateArgs& a) {
  const auto ms = LoadSamples(a.input, a.in);
  const auto alphabet = ms.alphabet();
  json out;
  out["measure"] = a.m.measure;
  out["samples"] = ms.sample_count();
  out["length"] = ms.total_length();
  out["alphabet"] = alphabet->tokens();
  if (a.m.measure == "code") {
    if (ms.sample_count() != 1) throw DataError("code measures take a single sample");
    const auto code = MakeCode(a.m);
    const auto& x = ms.samples().front();
    out["code_length_bits"] = code->CodeLength(x);
    try {
      const auto mu = MuExact(*code, x);
      out["log2_prob"] = mu.log2();
      out["prob"] = mu.linear();
    } catch (const std::length_error&) {
      out["note"] = "A^n too large to normalise; code length only";
    }
  } else {
    const auto mu = MakeMeasure(a.m, alphabet, CodeMeasure::Normalization::kExact);
    const auto p = mu->Prob(ms);
    out["measure"] = mu->name();
    out["log2_prob"] = p.log2();
    out["prob"] = p.linear();
    out["bits"] = p.bits();
    if (mu->name() == "R") {
      out["approximate"] = RProb(ms, OmegaWeights{}, a.m.max_order).approximate;
    }
  }
  if (a.format == "json") {
    std::cout << out.dump(2) << '\n';
  } else {
    for (auto& [k, v] : out.items()) std::cout << k << '\t' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return kOk;
}

// predict ----------------------------------------------------------------

struct PredictArgs {
  std::string input = "-";
  std::string prime;
  std::string trace;
  std::string side_info;
  std::string y;
  InputOptions in;
  MeasureOptions m;
  std::string format = "text";
};

int RunSideInfo(const PredictArgs& a) {
  // History file: one "x,y" pair per line.
  const auto text = ReadInput(a.side_info);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::set<std::string> xs;
  std::set<std::string> ys{a.y};
  std::istringstream lines(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(lines, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw DataError(a.side_info + ":" + std::to_string(line_no) + ": expected x,y");
    }
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    pairs.emplace_back(trim(line.substr(0, comma)), trim(line.substr(comma + 1)));
    xs.insert(pairs.back().first);
    ys.insert(pairs.back().second);
  }
  AlphabetPtr x_alpha = DeclaredAlphabet(a.in);
  if (!x_alpha) x_alpha = std::make_shared<Alphabet>(std::vector<std::string>(xs.begin(), xs.end()));
  const Alphabet y_alpha(std::vector<std::string>(ys.begin(), ys.end()));
  const ProductAlphabet product{x_alpha->size(), y_alpha.size()};
  std::vector<std::pair<Symbol, Symbol>> history;
  AsData([&] {
    for (auto& [x, y] : pairs) history.emplace_back(x_alpha->index(x), y_alpha.index(y));
    return 0;
  });
  const auto joint = MakeMeasure(a.m, Alphabet::OfSize(product.size()),
                                 CodeMeasure::Normalization::kConditionalOnly);
  PrintDistribution(SideInfoPredict(*joint, product, history, y_alpha.index(a.y)), *x_alpha, a.format);
  return kOk;
}

int RunPredict(const PredictArgs& a) {
  if (!a.side_info.empty()) {
    if (a.y.empty()) throw UsageError("--side-info needs --y");
    return RunSideInfo(a);
  }
  std::optional<MultiSample> priming;
  AlphabetPtr alphabet = DeclaredAlphabet(a.in);
  if (!a.prime.empty()) {
    priming = LoadSamples(a.prime, a.in, alphabet);
    alphabet = priming->alphabet();
  }
  auto ms = LoadSamples(a.input, a.in, alphabet);
  if (priming && !SameAlphabet(priming->alphabet(), ms.alphabet())) {
    // Re-read both over the union of their symbols.
    std::set<std::string> all(priming->alphabet()->tokens().begin(), priming->alphabet()->tokens().end());
    all.insert(ms.alphabet()->tokens().begin(), ms.alphabet()->tokens().end());
    alphabet = std::make_shared<Alphabet>(std::vector<std::string>(all.begin(), all.end()));
    priming = LoadSamples(a.prime, a.in, alphabet);
    ms = LoadSamples(a.input, a.in, alphabet);
  }
  alphabet = ms.alphabet();
  if (ms.sample_count() != 1) {
    // Earlier samples of the input act as priming too.
    std::vector<Sequence> head(ms.samples().begin(), ms.samples().end() - 1);
    if (priming) head.insert(head.begin(), priming->samples().begin(), priming->samples().end());
    priming = DiamondConcat(head);
  }
  const auto& x = ms.samples().back();
  const auto mu = MakeMeasure(a.m, alphabet, CodeMeasure::Normalization::kConditionalOnly);
  if (priming && a.m.measure == "code") throw UsageError("code measures do not take priming samples");
  const auto trace = OnlinePredict(*mu, x, priming);
  if (!a.trace.empty()) {
    std::ofstream out(a.trace);
    if (!out) throw DataError("cannot write '" + a.trace + "'");
    trace.WriteJsonLines(out);
  }
  Distribution next;
  {
    auto online = mu->Start();
    if (priming) {
      for (const auto& s : priming->samples()) {
        for (Symbol c : s.data()) online->Update(c);
        online->BeginSample();
      }
    }
    for (Symbol c : x.data()) online->Update(c);
    next = online->Predict();
  }
  if (a.format == "json") {
    json j{{"measure", mu->name()},
           {"next", DistributionJson(next, *alphabet)},
           {"total_logloss", trace.total_logloss},
           {"steps", trace.steps.size()}};
    std::cout << j.dump(2) << '\n';
  } else {
    PrintDistribution(next, *alphabet, a.format);
  }
  return kOk;
}

// density ----------------------------------------------------------------

struct DensityArgs {
  std::string input = "-";
  std::string column = "0";
  std::string interval;
  std::size_t levels = 8;
  MeasureOptions m;
  std::vector<double> at;
  std::string format = "text";
};

std::pair<double, double> ParseInterval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--interval expects lo:hi");
  try {
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("--interval expects lo:hi, got '" + text + "'");
  }
}

int RunDensity(const DensityArgs& a) {
  std::string path = a.input;
  std::string tmp;
  if (path == "-") {
    // IngestCsv reads from a file.
    char name[] = "/tmp/zest-stdin-XXXXXX";
    const int fd = mkstemp(name);
    if (fd < 0) throw DataError("cannot buffer standard input");
    close(fd);
    tmp = path = name;
    std::ofstream(path) << ReadInput("-");
  }
  CsvSeries series;
  try {
    series = IngestCsv(path, a.column);
  } catch (...) {
    if (!tmp.empty()) std::remove(tmp.c_str());
    throw;
  }
  if (!tmp.empty()) std::remove(tmp.c_str());
  auto [lo, hi] = a.interval.empty() ? std::pair{series.min, series.max} : ParseInterval(a.interval);
  if (a.interval.empty() && hi <= lo) hi = lo + 1.0;
  const PartitionScheme scheme(lo, hi, a.levels);
  LevelMeasureFactory factory =
      a.m.measure == "code" ? CodeLevels(MakeCode(a.m)) : MixtureLevels(OmegaWeights{}, a.m.max_order);
  if (a.m.measure != "code" && a.m.measure != "R") throw UsageError("density supports --measure R or code");
  const DensityEstimator est(scheme, factory);
  const auto cond = AsData([&] { return est.Condition(series.values); });
  const double log2_density = est.Log2Density(series.values);
  const double mean = cond.Mean();
  json j{{"n", series.values.size()},
         {"interval", {lo, hi}},
         {"levels", a.levels},
         {"log2_density", log2_density},
         {"predicted_mean", mean},
         {"level_weights", cond.level_weights()}};
  for (double x : a.at) j["conditional_density"][Format(x)] = AsData([&] { return cond.Density(x); });
  if (a.format == "json") {
    std::cout << j.dump(2) << '\n';
  } else if (a.format == "csv") {
    const auto cells = cond.FinestCellProbabilities();
    std::cout << "cell_low,cell_high,probability,density\n";
    for (Eigen::Index c = 0; c < cells.size(); ++c) {
      const double low = scheme.cell_low(a.levels, Symbol(c));
      const double w = scheme.width(a.levels);
      std::cout << Format(low) << ',' << Format(low + w) << ',' << Format(cells[c]) << ','
                << Format(cells[c] / w) << '\n';
    }
  } else {
    std::cout << "n\t" << series.values.size() << "\nlog2_density\t" << Format(log2_density)
              << "\npredicted_mean\t" << Format(mean) << '\n';
    for (double x : a.at) std::cout << "density_at\t" << Format(x) << '\t' << Format(cond.Density(x)) << '\n';
  }
  return kOk;
}

// simulate / bench -------------------------------------------------------

struct ProcessOptions {
  std::string process = "sine";
  std::uint64_t seed = 0;
  double lambda = -1.0;
  std::vector<std::string> components;
};

ProcessSpec BuildProcess(const ProcessOptions& p) {
  ProcessSpec spec;
  try {
    spec = ProcessSpec::Parse(p.process);
    if (p.lambda >= 0.0) spec.poisson_lambda = p.lambda;
    if (!p.components.empty()) {
      if (p.components.size() != 4) throw std::invalid_argument("--component must be given four times");
      for (std::size_t i = 0; i < 4; ++i) spec.components[i] = MixtureComponent::Parse(p.components[i]);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.seed = p.seed;
  return spec;
}

void AddProcessFlags(CLI::App* app, ProcessOptions& p) {
  app->add_option("--process", p.process,
                  "sine[:divisor], mixture[:lambda], bernoulli:p, markov:rows, csv:path[:column]")
      ->capture_default_str();
  app->add_option("--seed", p.seed, "Random seed")->capture_default_str();
  app->add_option("--lambda", p.lambda, "Poisson parameter of mixture segment lengths");
  app->add_option("--component", p.components, "Mixture function amplitude:divisor:phase (four times)");
}

struct SimulateArgs {
  ProcessOptions p;
  std::size_t n = 1000;
  std::string out;
};

int RunSimulate(const SimulateArgs& a) {
  const auto spec = BuildProcess(a.p);
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw DataError("cannot write '" + a.out + "'");
  }
  std::ostream& out = a.out.empty() ? std::cout : file;
  if (spec.symbolic()) {
    out << GenerateSymbols(spec, a.n).to_string() << '\n';
  } else {
    out << std::setprecision(17);
    for (double v : GenerateSeries(spec, a.n)) out << v << '\n';
  }
  return kOk;
}

struct BenchArgs {
  ProcessOptions p;
  std::vector<std::size_t> ns{1000};
  std::size_t runs = 100;
  std::size_t levels = 8;
  std::string backend = "density";
  MeasureOptions m;
  std::size_t threads = 0;
  std::string format = "markdown";
};

int RunBench(const BenchArgs& a) {
  const auto spec = BuildProcess(a.p);
  PredictorConfig config;
  config.levels = a.levels;
  config.max_order = a.m.max_order;
  config.threads = a.threads;
  if (a.backend == "density") {
    config.backend = PredictorConfig::Backend::kDensity;
  } else if (a.backend == "symbolic-mean") {
    config.backend = PredictorConfig::Backend::kSymbolicMean;
  } else if (a.backend == "symbolic-argmax") {
    config.backend = PredictorConfig::Backend::kSymbolicArgmax;
  } else {
    throw UsageError("unknown backend '" + a.backend + "'");
  }
  if (a.m.measure == "code") {
    config.code = MakeCode(a.m);
  } else if (a.m.measure != "R") {
    throw UsageError("bench supports --measure R or code");
  }
  const auto report = RunBenchmark(spec, config, a.runs, a.ns);
  if (a.format == "csv") {
    report.WriteCsv(std::cout);
  } else if (a.format == "json") {
    report.WriteJson(std::cout);
  } else {
    report.WriteMarkdown(std::cout);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal-code measures, predictors and density estimates"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* e = app.add_subcommand("estimate", "Probability of a sequence or multi-sample");
  e->add_option("input", est.input, "Input file, '-' for standard input; blank lines separate samples");
  AddInputFlags(e, est.in);
  AddMeasureFlags(e, est.m);
  e->add_option("--format", est.format)->check(CLI::IsMember({"text", "json"}));

  PredictArgs pred;
  auto* p = app.add_subcommand("predict", "Next-symbol distribution");
  p->add_option("input", pred.input, "Sequence to continue, '-' for standard input");
  p->add_option("--prime", pred.prime, "File of priming samples, separated by blank lines");
  p->add_option("--trace", pred.trace, "Write per-step predictions as JSON lines");
  p->add_option("--side-info", pred.side_info, "History of x,y pairs; predicts x for --y");
  p->add_option("--y", pred.y, "Side information for the next step");
  AddInputFlags(p, pred.in);
  AddMeasureFlags(p, pred.m);
  p->add_option("--format", pred.format)->check(CLI::IsMember({"text", "csv", "json"}));

  DensityArgs den;
  auto* d = app.add_subcommand("density", "Density estimate of a real-valued series");
  d->add_option("input", den.input, "CSV file, '-' for standard input");
  d->add_option("--column", den.column, "Column index or header name")->capture_default_str();
  d->add_option("--interval", den.interval, "lo:hi (default: data range)");
  d->add_option("--levels", den.levels, "Finest partition level")->capture_default_str()->check(CLI::Range(1, 24));
  d->add_option("--at", den.at, "Report the conditional density at these points");
  AddMeasureFlags(d, den.m);
  d->add_option("--format", den.format)->check(CLI::IsMember({"text", "csv", "json"}));

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Write a synthetic series");
  AddProcessFlags(s, sim.p);
  s->add_option("--n", sim.n, "Length")->capture_default_str();
  s->add_option("--out", sim.out, "Output file (default standard output)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Compare density prediction with the inertial baseline");
  AddProcessFlags(b, bench.p);
  b->add_option("--n", bench.ns, "Sample sizes")->delimiter(',');
  b->add_option("--runs", bench.runs, "Experiments per sample size")->capture_default_str();
  b->add_option("--levels", bench.levels, "Finest partition level")->capture_default_str()->check(CLI::Range(1, 24));
  b->add_option("--backend", bench.backend, "density, symbolic-mean or symbolic-argmax")->capture_default_str();
  b->add_option("--threads", bench.threads, "Worker threads (0: all cores)");
  AddMeasureFlags(b, bench.m);
  b->add_option("--format", bench.format)->check(CLI::IsMember({"csv", "json", "markdown"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*e) return RunEstimate(est);
    if (*p) return RunPredict(pred);
    if (*d) return RunDensity(den);
    if (*s) return RunSimulate(sim);
    if (*b) return RunBench(bench);
  } catch (const UsageError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const DataError& err) {
    std::cerr << "data error: " << err.what() << '\n';
    return kData;
  } catch (const CompressorError& err) {
    std::cerr << "compressor error: " << err.what() << '\n';
    return kCompressor;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return kUsage;
}
