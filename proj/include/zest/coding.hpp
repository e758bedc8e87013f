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

// Codes as measures: a compressor maps words to code lengths, and any
// length function obeying Kraft's inequality induces a probability measure.

#ifndef ZEST_CODING_HPP_
#define ZEST_CODING_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zest/alphabet.hpp"
#include "zest/distribution.hpp"
#include "zest/errors.hpp"
#include "zest/log_prob.hpp"
#include "zest/measures.hpp"
#include "zest/omega.hpp"

namespace zest {

// Deterministic map from finite words to code lengths in bits (>= 1).
// Implementations are safe to call concurrently.
class Compressor {
 public:
  virtual ~Compressor() = default;
  virtual std::uint64_t CodeLength(const Sequence& x) const = 0;
  virtual std::string name() const = 0;
};

// Memo table shared by the concrete compressors.
class CodeLengthCache {
 public:
  bool Lookup(const Sequence& x, std::uint64_t* bits) const;
  void Store(const Sequence& x, std::uint64_t bits);

 private:
  static std::string Key(const Sequence& x);
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::uint64_t> table_;
};

// ceil(-log2 R(x)) + overhead bits. Kraft holds because sum R = 1 over A^n.
class BuiltinCode final : public Compressor {
 public:
  struct Options {
    std::uint64_t overhead_bits = 1;
    std::size_t max_order = ContextMixture::kUnbounded;
  };
  BuiltinCode() : BuiltinCode(Options{}) {}
  explicit BuiltinCode(Options options, OmegaWeights omega = {})
      : options_(options), omega_(std::move(omega)) {}

  std::uint64_t CodeLength(const Sequence& x) const override;
  std::string name() const override { return "builtin-R"; }

 private:
  Options options_;
  OmegaWeights omega_;
  mutable CodeLengthCache cache_;
};

// Runs a shell command. With "{in}" and "{out}" in the template those are
// replaced by temporary file paths; otherwise the symbols are fed on standard
// input and the compressed stream is read from standard output. Each symbol
// index becomes one byte, so alphabets are limited to 256 symbols.
class ExternalCompressor final : public Compressor {
 public:
  explicit ExternalCompressor(std::string command_template);

  std::uint64_t CodeLength(const Sequence& x) const override;
  std::string name() const override { return command_; }

  // Compressed size in bytes of raw input.
  std::uint64_t CompressedBytes(const std::string& bytes) const;

 private:
  std::string command_;
  mutable std::mutex run_mu_;
  mutable CodeLengthCache cache_;
};

// Builds an external compressor from a command template (see above).
std::shared_ptr<Compressor> MakeExternalCompressor(const std::string& command_template);

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

// 2^-|U(x)| / sum_{v in A^|x|} 2^-|U(v)|. Enumerates A^|x|; throws
// std::length_error when |A|^|x| exceeds `cap` (use MuConditional instead).
LogProb MuExact(const Compressor& code, const Sequence& x,
                std::uint64_t cap = kDefaultEnumerationCap);

// 2^-|U(context a)| normalised over the symbols a.
Distribution MuConditional(const Compressor& code, const Sequence& context);

struct KraftReport {
  bool holds = false;
  double sum = 0.0;
};

// Sum of 2^-bits over a complete enumeration of A^n. Throws
// std::invalid_argument if the words are not exactly A^n for one n.
KraftReport KraftCheck(const std::vector<std::pair<Sequence, std::uint64_t>>& lengths);

// Code lengths of every word of length n.
std::vector<std::pair<Sequence, std::uint64_t>> EnumerateCodeLengths(
    const Compressor& code, const AlphabetPtr& alphabet, std::size_t n,
    std::uint64_t cap = kDefaultEnumerationCap);

// A compressor viewed as a measure on one alphabet. In kExact mode the
// probability of a word is MuExact; in kConditionalOnly mode it is the raw
// Kraft weight 2^-|U(x)|, a sub-probability. Predictions are MuConditional in
// both modes. Code measures are defined on single samples only.
class CodeMeasure final : public SequenceMeasure {
 public:
  enum class Normalization { kExact, kConditionalOnly };

  CodeMeasure(std::shared_ptr<const Compressor> code, AlphabetPtr alphabet,
              Normalization mode = Normalization::kConditionalOnly,
              std::uint64_t cap = kDefaultEnumerationCap);

  std::size_t alphabet_size() const override { return alphabet_->size(); }
  std::string name() const override { return "code:" + code_->name(); }
  std::unique_ptr<OnlinePredictor> Start() const override;

 private:
  std::shared_ptr<const Compressor> code_;
  AlphabetPtr alphabet_;
  Normalization mode_;
  std::uint64_t cap_;
};

}  // namespace zest

#endif  // ZEST_CODING_HPP_
