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

// Alphabets, symbol sequences and the diamond-separated multi-sample, with
// occurrence statistics that never look across a sample boundary.

#ifndef ZEST_ALPHABET_HPP_
#define ZEST_ALPHABET_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace zest {

using Symbol = std::uint32_t;

class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> tokens);

  // One token per character of `chars`, in the given order.
  static std::shared_ptr<const Alphabet> FromChars(std::string_view chars);
  // Tokens "0", "1", ..., "n-1".
  static std::shared_ptr<const Alphabet> OfSize(std::size_t n);
  static std::shared_ptr<const Alphabet> Binary() { return OfSize(2); }

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(Symbol s) const { return tokens_.at(s); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  // Throws std::invalid_argument for an unknown token.
  Symbol index(std::string_view token) const;
  bool contains(std::string_view token) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Symbol> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

bool SameAlphabet(const AlphabetPtr& a, const AlphabetPtr& b);

class Sequence {
 public:
  explicit Sequence(AlphabetPtr alphabet, std::vector<Symbol> data = {});

  // Parses one symbol per character ("0101" over the binary alphabet).
  static Sequence FromString(AlphabetPtr alphabet, std::string_view text);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::span<const Symbol> data() const { return data_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  Symbol operator[](std::size_t i) const { return data_[i]; }

  void push_back(Symbol s);
  Sequence appended(Symbol s) const;
  std::string to_string(std::string_view separator = "") const;

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return SameAlphabet(a.alphabet_, b.alphabet_) && a.data_ == b.data_;
  }

 private:
  AlphabetPtr alphabet_;
  std::vector<Symbol> data_;
};

// x^1 <> x^2 <> ... <> x^r : independent samples from one source.
class MultiSample {
 public:
  explicit MultiSample(std::vector<Sequence> samples);
  explicit MultiSample(Sequence single) : MultiSample(std::vector{std::move(single)}) {}

  const AlphabetPtr& alphabet() const { return samples_.front().alphabet(); }
  const std::vector<Sequence>& samples() const { return samples_; }
  std::size_t sample_count() const { return samples_.size(); }
  std::size_t total_length() const { return total_length_; }
  std::size_t max_sample_length() const;

  // Appends `s` to the final sample.
  MultiSample extended(Symbol s) const;
  // Appends `z` as a new, diamond-separated sample.
  MultiSample with_sample(Sequence z) const;

 private:
  std::vector<Sequence> samples_;
  std::size_t total_length_ = 0;
};

MultiSample DiamondConcat(std::vector<Sequence> parts);

// Overlapping occurrences of `w` inside each sample, summed over samples.
std::uint64_t CountOccurrences(const MultiSample& ms, const Sequence& w);

// nu(va) for every observed order-m context v.
class ContextCounts {
 public:
  ContextCounts(std::size_t order, std::size_t alphabet_size)
      : order_(order), alphabet_size_(alphabet_size) {}

  std::size_t order() const { return order_; }
  std::size_t alphabet_size() const { return alphabet_size_; }
  const std::map<std::vector<Symbol>, std::vector<std::uint64_t>>& table() const {
    return table_;
  }
  std::uint64_t count(const std::vector<Symbol>& context, Symbol a) const;
  std::uint64_t row_sum(const std::vector<Symbol>& context) const;
  // Sum of all row sums.
  std::uint64_t total() const;

  void add(std::span<const Symbol> context, Symbol a);

 private:
  std::size_t order_;
  std::size_t alphabet_size_;
  std::map<std::vector<Symbol>, std::vector<std::uint64_t>> table_;
};

ContextCounts CountContexts(const MultiSample& ms, std::size_t order);

// Samples are separated by blank lines. Within a sample every non-space
// character is one symbol. A null `alphabet` is inferred as the sorted set of
// characters seen.
MultiSample ParseMultiSample(std::string_view text, AlphabetPtr alphabet = nullptr);
// Same layout, but symbols are comma or newline separated tokens.
MultiSample ParseTokenSamples(std::string_view text, AlphabetPtr alphabet = nullptr);

}  // namespace zest

#endif  // ZEST_ALPHABET_HPP_
