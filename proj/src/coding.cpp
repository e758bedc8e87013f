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

#include "zest/coding.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>

namespace zest {

std::string CodeLengthCache::Key(const Sequence& x) {
  std::string key;
  key.reserve(x.size() * sizeof(Symbol) + 8);
  const auto n = std::uint64_t(x.alphabet()->size());
  key.append(reinterpret_cast<const char*>(&n), sizeof(n));
  for (Symbol s : x.data()) key.append(reinterpret_cast<const char*>(&s), sizeof(s));
  return key;
}

bool CodeLengthCache::Lookup(const Sequence& x, std::uint64_t* bits) const {
  std::lock_guard lock(mu_);
  auto it = table_.find(Key(x));
  if (it == table_.end()) return false;
  *bits = it->second;
  return true;
}

void CodeLengthCache::Store(const Sequence& x, std::uint64_t bits) {
  std::lock_guard lock(mu_);
  table_.emplace(Key(x), bits);
}

std::uint64_t BuiltinCode::CodeLength(const Sequence& x) const {
  std::uint64_t bits = 0;
  if (cache_.Lookup(x, &bits)) return bits;
  const double ideal = RProb(MultiSample(x), omega_, options_.max_order).prob.bits();
  // Guard against -log2 R landing a hair above an integer.
  bits = std::uint64_t(std::ceil(std::max(ideal - 1e-9, 0.0))) + options_.overhead_bits;
  bits = std::max<std::uint64_t>(bits, 1);
  cache_.Store(x, bits);
  return bits;
}

namespace {

class TempFile {
 public:
  TempFile() {
    auto pattern = (std::filesystem::temp_directory_path() / "zest-XXXXXX").string();
    int fd = mkstemp(pattern.data());
    if (fd < 0) throw CompressorError("cannot create temporary file");
    close(fd);
    path_ = pattern;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string ShellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string ReplaceAll(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

ExternalCompressor::ExternalCompressor(std::string command_template)
    : command_(std::move(command_template)) {
  if (command_.empty()) throw std::invalid_argument("empty compressor command");
  const bool has_in = command_.find("{in}") != std::string::npos;
  const bool has_out = command_.find("{out}") != std::string::npos;
  if (has_in != has_out) {
    throw std::invalid_argument("compressor template needs both {in} and {out}, or neither");
  }
}

std::uint64_t ExternalCompressor::CompressedBytes(const std::string& bytes) const {
  std::lock_guard lock(run_mu_);
  TempFile in, out, err;
  {
    std::ofstream f(in.path(), std::ios::binary);
    f.write(bytes.data(), std::streamsize(bytes.size()));
    if (!f) throw CompressorError("cannot write compressor input");
  }
  std::string cmd;
  if (command_.find("{in}") != std::string::npos) {
    cmd = ReplaceAll(ReplaceAll(command_, "{in}", ShellQuote(in.path())), "{out}",
                     ShellQuote(out.path()));
    cmd = "(" + cmd + ") </dev/null >/dev/null 2>" + ShellQuote(err.path());
  } else {
    cmd = "(" + command_ + ") <" + ShellQuote(in.path()) + " >" + ShellQuote(out.path()) +
          " 2>" + ShellQuote(err.path());
  }
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::ostringstream msg;
    msg << "compressor '" << command_ << "' failed";
    if (status != -1 && WIFEXITED(status)) msg << " with exit code " << WEXITSTATUS(status);
    const auto diag = ReadFile(err.path());
    if (!diag.empty()) msg << ": " << diag.substr(0, 512);
    throw CompressorError(msg.str());
  }
  std::error_code ec;
  const auto size = std::filesystem::file_size(out.path(), ec);
  if (ec) throw CompressorError("compressor produced no output file");
  return size;
}

std::uint64_t ExternalCompressor::CodeLength(const Sequence& x) const {
  if (x.alphabet()->size() > 256) {
    throw std::invalid_argument("external compressors need an alphabet of at most 256 symbols");
  }
  std::uint64_t bits = 0;
  if (cache_.Lookup(x, &bits)) return bits;
  std::string bytes;
  bytes.reserve(x.size());
  for (Symbol s : x.data()) bytes.push_back(char(static_cast<unsigned char>(s)));
  bits = std::max<std::uint64_t>(8 * CompressedBytes(bytes), 1);
  cache_.Store(x, bits);
  return bits;
}

std::shared_ptr<Compressor> MakeExternalCompressor(const std::string& command_template) {
  return std::make_shared<ExternalCompressor>(command_template);
}

namespace {

// Calls `fn` on every word of A^n in lexicographic order.
template <typename Fn>
void ForEachWord(const AlphabetPtr& alphabet, std::size_t n, std::uint64_t cap, Fn fn) {
  const std::size_t k = alphabet->size();
  double count = std::pow(double(k), double(n));
  if (count > double(cap)) {
    throw std::length_error("enumerating A^" + std::to_string(n) +
                            " exceeds the cap; use conditional normalisation");
  }
  std::vector<Symbol> word(n, 0);
  for (;;) {
    fn(Sequence(alphabet, word));
    std::size_t i = n;
    while (i > 0 && word[i - 1] + 1 == k) word[--i] = 0;
    if (i == 0) return;
    ++word[i - 1];
  }
}

}  // namespace

std::vector<std::pair<Sequence, std::uint64_t>> EnumerateCodeLengths(const Compressor& code,
                                                                     const AlphabetPtr& alphabet,
                                                                     std::size_t n,
                                                                     std::uint64_t cap) {
  std::vector<std::pair<Sequence, std::uint64_t>> out;
  ForEachWord(alphabet, n, cap, [&](Sequence w) {
    auto bits = code.CodeLength(w);
    out.emplace_back(std::move(w), bits);
  });
  return out;
}

LogProb MuExact(const Compressor& code, const Sequence& x, std::uint64_t cap) {
  std::vector<double> terms;
  ForEachWord(x.alphabet(), x.size(), cap,
              [&](const Sequence& w) { terms.push_back(-double(code.CodeLength(w))); });
  const double log_norm = LogSumExp2(terms);
  return LogProb::FromLog2(std::min(-double(code.CodeLength(x)) - log_norm, 0.0));
}

Distribution MuConditional(const Compressor& code, const Sequence& context) {
  const auto k = Eigen::Index(context.alphabet()->size());
  Eigen::VectorXd log_w(k);
  for (Eigen::Index a = 0; a < k; ++a) {
    log_w[a] = -double(code.CodeLength(context.appended(Symbol(a))));
  }
  Distribution p = ((log_w.array() - log_w.maxCoeff()) * std::numbers::ln2).exp().matrix();
  return p / p.sum();
}

KraftReport KraftCheck(const std::vector<std::pair<Sequence, std::uint64_t>>& lengths) {
  if (lengths.empty()) throw std::invalid_argument("empty code table");
  const auto& alphabet = lengths.front().first.alphabet();
  const std::size_t n = lengths.front().first.size();
  const double expected = std::pow(double(alphabet->size()), double(n));
  std::set<std::vector<Symbol>> seen;
  for (const auto& [w, bits] : lengths) {
    if (!SameAlphabet(w.alphabet(), alphabet) || w.size() != n) {
      throw std::invalid_argument("code table mixes word lengths or alphabets");
    }
    if (!seen.emplace(w.data().begin(), w.data().end()).second) {
      throw std::invalid_argument("code table lists a word twice");
    }
  }
  if (double(seen.size()) != expected) {
    throw std::invalid_argument("code table does not cover A^" + std::to_string(n));
  }
  std::vector<double> terms;
  terms.reserve(lengths.size());
  for (const auto& [w, bits] : lengths) terms.push_back(-double(bits));
  KraftReport report;
  report.sum = std::exp2(LogSumExp2(terms));
  report.holds = report.sum <= 1.0 + 1e-12;
  return report;
}

namespace {

class CodePredictor final : public OnlinePredictor {
 public:
  CodePredictor(std::shared_ptr<const Compressor> code, AlphabetPtr alphabet,
                CodeMeasure::Normalization mode, std::uint64_t cap)
      : code_(std::move(code)), context_(std::move(alphabet)), mode_(mode), cap_(cap) {}

  std::size_t alphabet_size() const override { return context_.alphabet()->size(); }
  void BeginSample() override {
    if (!context_.empty()) {
      throw std::logic_error("code measures are not defined on multi-samples");
    }
  }
  void Update(Symbol a) override { context_.push_back(a); }
  Distribution Predict() const override { return MuConditional(*code_, context_); }
  LogProb Probability() const override {
    if (mode_ == CodeMeasure::Normalization::kExact) return MuExact(*code_, context_, cap_);
    return LogProb::FromLog2(-double(code_->CodeLength(context_)));
  }

 private:
  std::shared_ptr<const Compressor> code_;
  Sequence context_;
  CodeMeasure::Normalization mode_;
  std::uint64_t cap_;
};

}  // namespace

CodeMeasure::CodeMeasure(std::shared_ptr<const Compressor> code, AlphabetPtr alphabet,
                         Normalization mode, std::uint64_t cap)
    : code_(std::move(code)), alphabet_(std::move(alphabet)), mode_(mode), cap_(cap) {
  if (!code_ || !alphabet_) throw std::invalid_argument("code measure needs a code and alphabet");
}

std::unique_ptr<OnlinePredictor> CodeMeasure::Start() const {
  return std::make_unique<CodePredictor>(code_, alphabet_, mode_, cap_);
}

}  // namespace zest
