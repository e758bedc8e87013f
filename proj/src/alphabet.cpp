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

#include "zest/alphabet.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace zest {

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw std::invalid_argument("alphabet must not be empty");
  for (Symbol i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw std::invalid_argument("duplicate alphabet token '" + tokens_[i] + "'");
    }
  }
}

std::shared_ptr<const Alphabet> Alphabet::FromChars(std::string_view chars) {
  std::vector<std::string> tokens;
  for (char c : chars) tokens.emplace_back(1, c);
  return std::make_shared<const Alphabet>(std::move(tokens));
}

std::shared_ptr<const Alphabet> Alphabet::OfSize(std::size_t n) {
  std::vector<std::string> tokens;
  tokens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) tokens.push_back(std::to_string(i));
  return std::make_shared<const Alphabet>(std::move(tokens));
}

Symbol Alphabet::index(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) {
    throw std::invalid_argument("symbol '" + std::string(token) + "' not in alphabet");
  }
  return it->second;
}

bool Alphabet::contains(std::string_view token) const {
  return index_.contains(std::string(token));
}

bool SameAlphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

Sequence::Sequence(AlphabetPtr alphabet, std::vector<Symbol> data)
    : alphabet_(std::move(alphabet)), data_(std::move(data)) {
  if (!alphabet_) throw std::invalid_argument("sequence requires an alphabet");
  for (Symbol s : data_) {
    if (s >= alphabet_->size()) throw std::out_of_range("symbol index out of range");
  }
}

Sequence Sequence::FromString(AlphabetPtr alphabet, std::string_view text) {
  std::vector<Symbol> data;
  data.reserve(text.size());
  for (char c : text) data.push_back(alphabet->index(std::string_view(&c, 1)));
  return Sequence(std::move(alphabet), std::move(data));
}

void Sequence::push_back(Symbol s) {
  if (s >= alphabet_->size()) throw std::out_of_range("symbol index out of range");
  data_.push_back(s);
}

Sequence Sequence::appended(Symbol s) const {
  Sequence out = *this;
  out.push_back(s);
  return out;
}

std::string Sequence::to_string(std::string_view separator) const {
  std::string out;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (i > 0) out += separator;
    out += alphabet_->token(data_[i]);
  }
  return out;
}

MultiSample::MultiSample(std::vector<Sequence> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("multi-sample must not be empty");
  for (const auto& s : samples_) {
    if (!SameAlphabet(s.alphabet(), samples_.front().alphabet())) {
      throw std::invalid_argument("samples use different alphabets");
    }
    total_length_ += s.size();
  }
}

std::size_t MultiSample::max_sample_length() const {
  std::size_t m = 0;
  for (const auto& s : samples_) m = std::max(m, s.size());
  return m;
}

MultiSample MultiSample::extended(Symbol s) const {
  auto samples = samples_;
  samples.back().push_back(s);
  return MultiSample(std::move(samples));
}

MultiSample MultiSample::with_sample(Sequence z) const {
  auto samples = samples_;
  samples.push_back(std::move(z));
  return MultiSample(std::move(samples));
}

MultiSample DiamondConcat(std::vector<Sequence> parts) {
  return MultiSample(std::move(parts));
}

std::uint64_t CountOccurrences(const MultiSample& ms, const Sequence& w) {
  if (w.empty()) throw std::invalid_argument("pattern must be nonempty");
  if (!SameAlphabet(ms.alphabet(), w.alphabet())) {
    throw std::invalid_argument("pattern alphabet differs from sample alphabet");
  }
  std::uint64_t count = 0;
  const auto pattern = w.data();
  for (const auto& sample : ms.samples()) {
    const auto data = sample.data();
    if (data.size() < pattern.size()) continue;
    for (std::size_t i = 0; i + pattern.size() <= data.size(); ++i) {
      if (std::equal(pattern.begin(), pattern.end(), data.begin() + i)) ++count;
    }
  }
  return count;
}

std::uint64_t ContextCounts::count(const std::vector<Symbol>& context, Symbol a) const {
  auto it = table_.find(context);
  return it == table_.end() ? 0 : it->second.at(a);
}

std::uint64_t ContextCounts::row_sum(const std::vector<Symbol>& context) const {
  auto it = table_.find(context);
  if (it == table_.end()) return 0;
  std::uint64_t sum = 0;
  for (auto c : it->second) sum += c;
  return sum;
}

std::uint64_t ContextCounts::total() const {
  std::uint64_t sum = 0;
  for (const auto& [v, row] : table_) {
    for (auto c : row) sum += c;
  }
  return sum;
}

void ContextCounts::add(std::span<const Symbol> context, Symbol a) {
  auto& row = table_[std::vector<Symbol>(context.begin(), context.end())];
  if (row.empty()) row.assign(alphabet_size_, 0);
  if (row[a] == std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("context count overflow");
  }
  ++row[a];
}

ContextCounts CountContexts(const MultiSample& ms, std::size_t order) {
  ContextCounts counts(order, ms.alphabet()->size());
  for (const auto& sample : ms.samples()) {
    const auto data = sample.data();
    for (std::size_t i = order; i < data.size(); ++i) {
      counts.add(data.subspan(i - order, order), data[i]);
    }
  }
  return counts;
}

namespace {

std::vector<std::string_view> SplitBlocks(std::string_view text) {
  std::vector<std::string_view> blocks;
  std::size_t start = 0;
  std::size_t pos = 0;
  auto blank_line_end = [&](std::size_t p) -> std::size_t {
    // p points at '\n'; returns end of a following whitespace-only line, or npos.
    std::size_t q = p + 1;
    while (q < text.size() && (text[q] == ' ' || text[q] == '\t' || text[q] == '\r')) ++q;
    if (q < text.size() && text[q] == '\n') return q;
    return std::string_view::npos;
  };
  while (pos < text.size()) {
    if (text[pos] == '\n') {
      std::size_t end = blank_line_end(pos);
      if (end != std::string_view::npos) {
        blocks.push_back(text.substr(start, pos - start));
        while (end != std::string_view::npos) {
          pos = end;
          end = blank_line_end(pos);
        }
        start = pos + 1;
      }
    }
    ++pos;
  }
  if (start < text.size()) blocks.push_back(text.substr(start));
  return blocks;
}

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return std::string(s);
}

MultiSample BuildSamples(const std::vector<std::vector<std::string>>& blocks,
                         AlphabetPtr alphabet) {
  if (!alphabet) {
    std::set<std::string> seen;
    for (const auto& b : blocks) seen.insert(b.begin(), b.end());
    if (seen.empty()) seen.insert("0");
    alphabet = std::make_shared<const Alphabet>(
        std::vector<std::string>(seen.begin(), seen.end()));
  }
  std::vector<Sequence> samples;
  for (const auto& b : blocks) {
    std::vector<Symbol> data;
    data.reserve(b.size());
    for (const auto& tok : b) data.push_back(alphabet->index(tok));
    samples.emplace_back(alphabet, std::move(data));
  }
  if (samples.empty()) samples.emplace_back(alphabet);
  return MultiSample(std::move(samples));
}

}  // namespace

MultiSample ParseMultiSample(std::string_view text, AlphabetPtr alphabet) {
  std::vector<std::vector<std::string>> blocks;
  for (auto block : SplitBlocks(text)) {
    std::vector<std::string> toks;
    for (char c : block) {
      if (!IsSpace(c)) toks.emplace_back(1, c);
    }
    blocks.push_back(std::move(toks));
  }
  return BuildSamples(blocks, std::move(alphabet));
}

MultiSample ParseTokenSamples(std::string_view text, AlphabetPtr alphabet) {
  std::vector<std::vector<std::string>> blocks;
  for (auto block : SplitBlocks(text)) {
    std::vector<std::string> toks;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= block.size(); ++i) {
      if (i == block.size() || block[i] == ',' || block[i] == '\n') {
        auto tok = Trim(block.substr(start, i - start));
        if (!tok.empty()) toks.push_back(std::move(tok));
        start = i + 1;
      }
    }
    blocks.push_back(std::move(toks));
  }
  return BuildSamples(blocks, std::move(alphabet));
}

}  // namespace zest
